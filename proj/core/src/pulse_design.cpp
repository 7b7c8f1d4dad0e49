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

#include "qmem/pulse_design.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "qmem/errors.hpp"

namespace qmem {

namespace {

constexpr double kActiveCavityFraction = 1e-6;
constexpr double kInfeasibleTolerance = 1e-8;
constexpr double kMinOscillatorFraction = 1e-12;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double sech(double x) { return 1.0 / std::cosh(x); }

std::array<IndexRange, 3> write_only(std::size_t n) { return {IndexRange{0, n}, IndexRange{n, n}, IndexRange{n, n}}; }

void require_lead(const TimeGrid &grid, double t0) {
    if (grid.t_start() > t0 - kLeadWidths + 1e-9) {
        throw InvalidArgument("write grid must start at least 8 widths before t0 (starts at " +
                              std::to_string(grid.t_start()) + ", t0 = " + std::to_string(t0) + ")");
    }
    if (!(grid.t_end() > t0)) {
        throw InvalidArgument("write grid must extend past the arrival time t0");
    }
}

// Fourth-order finite-difference derivative; one-sided stencils on the two edge samples.
std::vector<double> derivative(std::span<const double> y, double dt) {
    const std::size_t n = y.size();
    std::vector<double> d(n);
    const double h = 12.0 * dt;
    for (std::size_t k = 2; k + 2 < n; ++k) {
        d[k] = (-y[k + 2] + 8.0 * y[k + 1] - 8.0 * y[k - 1] + y[k - 2]) / h;
    }
    d[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / h;
    d[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / h;
    const std::size_t m = n - 1;
    d[m] = (25.0 * y[m] - 48.0 * y[m - 1] + 36.0 * y[m - 2] - 16.0 * y[m - 3] + 3.0 * y[m - 4]) / h;
    d[m - 1] = (3.0 * y[m] + 10.0 * y[m - 1] - 18.0 * y[m - 2] + 6.0 * y[m - 3] - y[m - 4]) / h;
    return d;
}

}  // namespace

void MemoryParams::validate() const {
    if (!std::isfinite(kappa) || !(kappa > 0)) {
        throw InvalidArgument("kappa must be positive");
    }
    if (!std::isfinite(gamma) || gamma < 0) {
        throw InvalidArgument("gamma must be nonnegative");
    }
}

std::string_view phase_name(Phase p) noexcept {
    switch (p) {
        case Phase::write:
            return "write";
        case Phase::hold:
            return "hold";
        case Phase::read:
            return "read";
    }
    return "?";
}

ControlSchedule::ControlSchedule(TimeGrid grid, std::vector<double> g, std::vector<double> delta,
                                 std::vector<double> Delta, std::array<IndexRange, 3> phases)
    : grid_(grid), g_(std::move(g)), delta_(std::move(delta)), Delta_(std::move(Delta)), phases_(phases) {
    const std::size_t n = grid_.size();
    if (g_.size() != n || delta_.size() != n || Delta_.size() != n) {
        throw InvalidArgument("control arrays must match the grid length");
    }
    if (!all_finite(g_) || !all_finite(delta_) || !all_finite(Delta_)) {
        throw InvalidArgument("controls must be finite");
    }
    const auto &[w, h, r] = phases_;
    if (w.first != 0 || w.last != h.first || h.last != r.first || r.last != n || w.last < w.first ||
        h.last < h.first || r.last < r.first) {
        throw InvalidArgument("phase ranges must partition the grid in write, hold, read order");
    }
}

Phase ControlSchedule::phase_at(std::size_t k) const noexcept {
    if (range(Phase::write).contains(k)) {
        return Phase::write;
    }
    if (range(Phase::hold).contains(k)) {
        return Phase::hold;
    }
    return Phase::read;
}

const ControlSchedule &write_schedule(const Design &d) noexcept {
    return std::visit([](const auto &x) -> const ControlSchedule & { return x.schedule; }, d);
}

const Envelope &cavity_target(const Design &d) noexcept {
    return std::visit([](const auto &x) -> const Envelope & { return x.a_target; }, d);
}

double arrival_time(const Design &d) noexcept {
    return std::visit([](const auto &x) { return x.t0; }, d);
}

TimeGrid make_write_grid(double t0, double dt, double lead) {
    if (!std::isfinite(t0) || !std::isfinite(dt) || !(dt > 0) || !std::isfinite(lead) || lead < 0) {
        throw InvalidArgument("write grid needs finite t0, positive dt and nonnegative lead");
    }
    const double span = -(t0 - lead);
    if (!(span > 0)) {
        throw InvalidArgument("pulse must arrive early enough for the write phase to end at t = 0");
    }
    if (span / dt > 1e8) {
        throw InvalidArgument("write grid would exceed 1e8 intervals");
    }
    auto n = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
    n = std::max<std::size_t>(n, 1);
    return TimeGrid(-static_cast<double>(n) * dt, dt, n + 1);
}

CouplingDesign design_coupling_sech(double t0, const TimeGrid &grid) {
    if (!std::isfinite(t0)) {
        throw InvalidArgument("t0 must be finite");
    }
    require_lead(grid, t0);
    const std::size_t n = grid.size();
    std::vector<double> g(n), a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double tau = grid.at(k) - t0;
        g[k] = -sech(tau);
        a[k] = sech(tau);
        // e^tau sech(tau), written so it neither overflows nor cancels.
        b[k] = 2.0 / (1.0 + std::exp(-2.0 * tau));
    }
    ControlSchedule s(grid, std::move(g), std::vector<double>(n), std::vector<double>(n), write_only(n));
    return CouplingDesign{std::move(s), Envelope::from_real(grid, a), Envelope::from_real(grid, b), t0};
}

CouplingDesign design_coupling_general(const Envelope &a_desired, const MemoryParams &params) {
    params.validate();
    const TimeGrid &grid = a_desired.grid();
    const std::size_t n = grid.size();
    if (n < 5) {
        throw InvalidArgument("general coupling design needs at least 5 samples");
    }
    if (!a_desired.is_real()) {
        throw UnsupportedInput("cavity envelope must be real");
    }
    const std::vector<double> a = a_desired.real_part();
    const double peak = *std::max_element(a.begin(), a.end());
    if (!(peak > 0)) {
        throw DegenerateInput("cavity envelope is empty");
    }
    if (*std::min_element(a.begin(), a.end()) < -1e-12 * peak) {
        throw UnsupportedInput("cavity envelope changes sign");
    }
    if (std::abs(a.front()) > kActiveCavityFraction * peak) {
        throw UnsupportedInput("cavity envelope must start empty (a(start) <= 1e-6 of peak)");
    }

    const double kappa = params.kappa;
    const double dt = grid.dt();
    const std::vector<double> a_dot = derivative(a, dt);

    // d(b^2)/dt = 2a(kappa a - da/dt), with b(start) = 0.
    std::vector<double> b_sq(n);
    double prev = 2.0 * a[0] * (kappa * a[0] - a_dot[0]);
    for (std::size_t k = 1; k < n; ++k) {
        const double q = 2.0 * a[k] * (kappa * a[k] - a_dot[k]);
        b_sq[k] = b_sq[k - 1] + 0.5 * dt * (prev + q);
        prev = q;
    }
    const auto worst = std::min_element(b_sq.begin(), b_sq.end());
    if (*worst < -kInfeasibleTolerance * peak * peak) {
        throw DesignInfeasible("envelope rises faster than the cavity can follow: b^2 reaches " +
                               std::to_string(*worst) + " at t = " +
                               std::to_string(grid.at(static_cast<std::size_t>(worst - b_sq.begin()))));
    }

    std::vector<double> b(n);
    std::vector<std::optional<double>> g_active(n);
    for (std::size_t k = 0; k < n; ++k) {
        b[k] = std::sqrt(std::max(b_sq[k], 0.0));
        if (a[k] > kActiveCavityFraction * peak && b[k] > kMinOscillatorFraction * peak) {
            g_active[k] = (a_dot[k] - kappa * a[k]) / b[k];
        }
    }

    // Where the cavity or oscillator is empty, hold g at the nearest computed value.
    std::vector<double> g(n);
    std::optional<std::size_t> first_active;
    for (std::size_t k = 0; k < n; ++k) {
        if (g_active[k]) {
            first_active = k;
            break;
        }
    }
    if (!first_active) {
        throw DesignInfeasible("no sample has both cavity and oscillator populated");
    }
    std::vector<long> left(n, -1), right(n, -1);
    for (std::size_t k = 0; k < n; ++k) {
        left[k] = g_active[k] ? static_cast<long>(k) : (k > 0 ? left[k - 1] : -1);
    }
    for (std::size_t k = n; k-- > 0;) {
        right[k] = g_active[k] ? static_cast<long>(k) : (k + 1 < n ? right[k + 1] : -1);
    }
    for (std::size_t k = 0; k < n; ++k) {
        long src = left[k];
        const auto dist = [&](long j) { return std::labs(j - static_cast<long>(k)); };
        if (src < 0 || (right[k] >= 0 && dist(right[k]) < dist(src))) {
            src = right[k];
        }
        g[k] = *g_active[static_cast<std::size_t>(src)];
    }

    const double t_peak = grid.at(static_cast<std::size_t>(std::max_element(a.begin(), a.end()) - a.begin()));
    ControlSchedule s(grid, std::move(g), std::vector<double>(n), std::vector<double>(n), write_only(n));
    return CouplingDesign{std::move(s), a_desired, Envelope::from_real(grid, b), t_peak};
}

DetuningDesign design_detuning_sech(double t0, const TimeGrid &grid, double max_window) {
    if (!std::isfinite(t0)) {
        throw InvalidArgument("t0 must be finite");
    }
    require_lead(grid, t0);
    if (grid.t_end() - t0 > max_window + 1e-9) {
        throw InvalidArgument("detuning write window ends " + std::to_string(grid.t_end() - t0) +
                              " widths after t0; the cap is " + std::to_string(max_window));
    }
    const std::size_t n = grid.size();
    std::vector<double> g(n, 1.0), delta(n), Delta(n), a(n), b1(n), b2(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double tau = grid.at(k) - t0;
        const double e = std::exp(tau);
        const double s = sech(tau);
        const double th = std::tanh(tau);
        delta[k] = e * th;
        Delta[k] = th / e + s;
        a[k] = s;
        b1[k] = -e * s * s;
        b2[k] = e * s * th;
    }
    ControlSchedule sch(grid, std::move(g), std::move(delta), std::move(Delta), write_only(n));
    return DetuningDesign{std::move(sch), Envelope::from_real(grid, a), Envelope::from_real(grid, b1),
                          Envelope::from_real(grid, b2), t0};
}

std::size_t hold_steps(double T_hold, double dt) {
    if (!std::isfinite(T_hold) || T_hold < 0) {
        throw InvalidArgument("hold time must be finite and nonnegative");
    }
    const double steps = std::round(T_hold / dt);
    if (std::abs(steps * dt - T_hold) > 1e-6 * dt) {
        throw InvalidArgument("hold time " + std::to_string(T_hold) + " is not a whole number of steps of " +
                              std::to_string(dt));
    }
    return static_cast<std::size_t>(steps);
}

ControlSchedule time_reversed_readout(const Design &design, double T_hold, const HoldOptions &hold) {
    const ControlSchedule &w = write_schedule(design);
    const TimeGrid &wg = w.grid();
    if (std::abs(wg.t_end()) > 1e-9 * std::max(1.0, std::abs(wg.t_start()))) {
        throw InvalidArgument("design write phase must end at t = 0");
    }
    if (hold.mode == HoldOptions::Mode::detuned && !std::isfinite(hold.detuning)) {
        throw InvalidArgument("hold detuning must be finite");
    }
    const std::size_t n_hold = hold_steps(T_hold, wg.dt());
    const std::size_t end_write = wg.size() - 1;
    const std::size_t start_read = end_write + n_hold;
    const std::size_t n = start_read + end_write + 1;
    TimeGrid grid(wg.t_start(), wg.dt(), n);

    std::vector<double> g(n), delta(n), Delta(n);
    std::copy(w.g().begin(), w.g().end(), g.begin());
    std::copy(w.delta().begin(), w.delta().end(), delta.begin());
    std::copy(w.Delta().begin(), w.Delta().end(), Delta.begin());
    if (hold.mode == HoldOptions::Mode::detuned) {
        for (std::size_t k = end_write + 1; k < start_read; ++k) {
            g[k] = 1.0;
            Delta[k] = hold.detuning;
        }
    }
    // With no hold the sample at t = 0 belongs to the write phase.
    for (std::size_t j = (n_hold == 0 ? 1 : 0); j <= end_write; ++j) {
        g[start_read + j] = w.g()[end_write - j];
        delta[start_read + j] = -w.delta()[end_write - j];
        Delta[start_read + j] = -w.Delta()[end_write - j];
    }
    const std::size_t first_read = std::max(start_read, end_write + 1);
    std::array<IndexRange, 3> phases{IndexRange{0, end_write + 1}, IndexRange{end_write + 1, first_read},
                                     IndexRange{first_read, n}};
    return ControlSchedule(grid, std::move(g), std::move(delta), std::move(Delta), phases);
}

}  // namespace qmem
