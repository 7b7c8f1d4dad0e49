// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmem/metrology.hpp"

#include <cmath>
#include <string>

#include "qmem/errors.hpp"

namespace qmem {

namespace {

void require_eta(double eta) {
    if (!std::isfinite(eta) || eta < 0 || eta > 1) {
        throw InvalidArgument("efficiency must lie in [0, 1], got " + std::to_string(eta));
    }
}

void require_n_bar(double n_bar) {
    if (!std::isfinite(n_bar) || n_bar < 0) {
        throw InvalidArgument("mean photon number must be nonnegative, got " + std::to_string(n_bar));
    }
}

constexpr double kEfficiencySlack = 1e-6;
constexpr double kMinInputAmplitude = 1e-12;

}  // namespace

ReferenceModes reference_modes(const ProtocolResult &result) {
    const TimeGrid &grid = result.schedule.grid();
    const std::size_t write_len = result.schedule.range(Phase::write).size();
    const std::size_t start_read = grid.nearest_index(result.timing.T_hold);
    if (start_read + write_len != grid.size()) {
        throw InvalidArgument("protocol grid is not write/hold/read symmetric");
    }
    ModeFunction in = normalize_mode(result.A_in.slice(0, write_len));
    ModeFunction out(in.envelope().reversed_onto(grid.sub(start_read, write_len)));
    return {std::move(in), std::move(out)};
}

EfficiencyReport efficiency(const ProtocolResult &result, const ModeFunction &expected_out_mode,
                            const ModeFunction &in_mode) {
    const TimeGrid &grid = result.schedule.grid();
    const std::size_t write_len = result.schedule.range(Phase::write).size();
    const std::size_t start_read = grid.nearest_index(result.timing.T_hold);
    const std::size_t read_len = grid.size() - start_read;

    const ModeAmplitude a_in = project(in_mode, result.A_in.slice(0, write_len));
    const ModeAmplitude a_out = project(expected_out_mode, result.A_out.slice(start_read, read_len));
    if (std::abs(a_in.value) < kMinInputAmplitude) {
        throw DegenerateInput("input mode amplitude is zero");
    }
    const double eta = std::norm(a_out.value / a_in.value);
    if (eta > 1.0 + kEfficiencySlack) {
        throw Error("retrieval efficiency " + std::to_string(eta) + " exceeds 1; input mode does not match the input");
    }
    const double clipped = std::min(eta, 1.0);
    return {std::sqrt(clipped), clipped, a_in, a_out};
}

EfficiencyReport efficiency(const ProtocolResult &result) {
    const ReferenceModes modes = reference_modes(result);
    return efficiency(result, modes.out, modes.in);
}

double coherent_fidelity(double eta, double n_bar) {
    require_eta(eta);
    require_n_bar(n_bar);
    const double miss = 1.0 - std::sqrt(eta);
    return 1.0 / (1.0 + n_bar * miss * miss);
}

double classical_coherent_bound(double n_bar) {
    require_n_bar(n_bar);
    return (1.0 + n_bar) / (2.0 * n_bar + 1.0);
}

double qm_efficiency_threshold(double n_bar) {
    require_n_bar(n_bar);
    const double miss = 1.0 - std::sqrt(1.0 / (n_bar + 1.0));
    return miss * miss;
}

double bounded_fidelity(double eta, int n_m) {
    require_eta(eta);
    const double r = std::sqrt(eta);
    switch (n_m) {
        case 1:
            return (eta + 2.0 * r + 3.0) / 6.0;
        case 2:
            return (eta * eta + 2.0 * eta * r + 3.0 * eta + 2.0 * r + 4.0) / 12.0;
        default:
            throw InvalidArgument("closed-form bounded fidelity exists only for n_m = 1 or 2");
    }
}

double clone_bound(int n_m) {
    if (n_m < 1) {
        throw InvalidArgument("photon-number bound must be at least 1");
    }
    return 2.0 / (n_m + 2.0);
}

double bounded_fidelity_threshold(int n_m) {
    const double target = clone_bound(n_m);
    double lo = 0.0, hi = 1.0;
    if (bounded_fidelity(lo, n_m) >= target) {
        return 0.0;
    }
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        (bounded_fidelity(mid, n_m) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

FidelityReport fidelity_report(double eta, double n_bar) {
    require_eta(eta);
    require_n_bar(n_bar);
    FidelityReport r{};
    r.eta = eta;
    r.n_bar = n_bar;
    r.F_coherent = coherent_fidelity(eta, n_bar);
    r.F_classical_coherent = classical_coherent_bound(n_bar);
    r.eta_threshold = qm_efficiency_threshold(n_bar);
    r.F1 = bounded_fidelity(eta, 1);
    r.F2 = bounded_fidelity(eta, 2);
    r.clone_bound_1 = clone_bound(1);
    r.clone_bound_2 = clone_bound(2);
    r.verdicts = {r.F_coherent > r.F_classical_coherent, r.F1 > r.clone_bound_1, r.F2 > r.clone_bound_2};
    return r;
}

}  // namespace qmem
