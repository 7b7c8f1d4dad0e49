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

#include "qmem/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qmem/errors.hpp"
#include "qmem/metrology.hpp"

using namespace qmem;
using qmem_test::sech_ref;

namespace {

constexpr double kT0 = -5.0;

Design coupling(double dt = 1e-3, double t0 = kT0) { return design_coupling_sech(t0, make_write_grid(t0, dt)); }

double intensity(const ProtocolResult &r) { return efficiency(r).intensity_efficiency; }

ControlSchedule write_only(const TimeGrid &g, std::vector<double> gv) {
    const std::size_t n = g.size();
    return ControlSchedule(g, std::move(gv), std::vector<double>(n), std::vector<double>(n),
                           {IndexRange{0, n}, IndexRange{n, n}, IndexRange{n, n}});
}

// |A_out(t) + A_in(T - t)| relative to the input peak over [from, end].
double mirror_error(const ProtocolResult &r, double from) {
    const TimeGrid &g = r.schedule.grid();
    const std::size_t n = g.size();
    double worst = 0;
    for (std::size_t k = r.schedule.range(Phase::read).first; k < n; ++k) {
        if (g.at(k) >= from - 1e-12) {
            worst = std::max(worst, std::abs(r.A_out[k] + r.A_in[n - 1 - k]));
        }
    }
    return worst / r.A_in.peak_abs();
}

}  // namespace

TEST(integrate, free_decay_matches_exponentials) {
    TimeGrid g = make_grid(0, 4, 1e-3);
    const MemoryParams p{1.0, 0.3};
    StateTrajectory s = integrate(p, write_only(g, std::vector<double>(g.size())), Envelope::zeros(g), {1, 0}, {0, 2});
    for (std::size_t k = 0; k < g.size(); k += 250) {
        ASSERT_NEAR(std::abs(s.a[k] - std::exp(-g.at(k))), 0.0, 1e-12);
        ASSERT_NEAR(std::abs(s.b[k] - cplx(0, 2) * std::exp(-0.3 * g.at(k))), 0.0, 1e-12);
    }
}

TEST(integrate, detuned_rotation) {
    TimeGrid g = make_grid(0, 2, 1e-3);
    const std::size_t n = g.size();
    ControlSchedule s(g, std::vector<double>(n), std::vector<double>(n, 3.0), std::vector<double>(n, -7.0),
                      {IndexRange{0, n}, IndexRange{n, n}, IndexRange{n, n}});
    StateTrajectory tr = integrate(MemoryParams{1.0, 0.0}, s, Envelope::zeros(g), {1, 0}, {1, 0});
    const cplx I(0, 1);
    EXPECT_LT(std::abs(tr.a[n - 1] - std::exp(-(1.0 + 3.0 * I) * 2.0)), 1e-9);
    EXPECT_LT(std::abs(tr.b[n - 1] - std::exp(7.0 * I * 2.0)), 1e-9);
}

TEST(integrate, sech_write_is_absorbed) {
    Design d = coupling();
    const CouplingDesign &c = std::get<CouplingDesign>(d);
    const TimeGrid &g = c.schedule.grid();
    Envelope A_in = c.a_target.scaled(std::sqrt(2.0));
    StateTrajectory tr = integrate(MemoryParams{}, c.schedule, A_in);
    EXPECT_NEAR(tr.b[g.size() - 1].real(), 2.0, 1e-3);
    double worst = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        worst = std::max(worst, std::abs(std::sqrt(2.0) * tr.a[k] - A_in[k]));
    }
    EXPECT_LT(worst / A_in.peak_abs(), 1e-3);
}

TEST(integrate, rejects_mismatched_grid) {
    TimeGrid g = make_grid(0, 1, 1e-2);
    EXPECT_THROW(integrate(MemoryParams{}, write_only(g, std::vector<double>(g.size())),
                           Envelope::zeros(make_grid(0, 1, 2e-2))),
                 InvalidArgument);
}

TEST(check_resolution, reports_stiff_control) {
    TimeGrid g = make_write_grid(kT0, 1e-3);
    DetuningDesign d = design_detuning_sech(kT0, g);
    try {
        check_resolution(d.schedule, MemoryParams{});
        FAIL() << "expected StiffnessError";
    } catch (const StiffnessError &e) {
        EXPECT_EQ(e.control(), "Delta");
        // |Delta| peaks at the window start, tau = -8.
        const double peak = std::exp(8.0) * std::tanh(8.0) - sech_ref(8.0);
        EXPECT_NEAR(e.peak_rate(), peak, 1e-9 * peak);
        EXPECT_EQ(e.dt(), 1e-3);
        EXPECT_NEAR(e.required_dt(), kResolutionLimit / peak, 1e-15);
        EXPECT_NE(std::string(e.what()).find("Delta"), std::string::npos);
    }
    EXPECT_NEAR(max_stable_step(d.schedule, MemoryParams{}), kResolutionLimit / 2981.0, 1e-7);
}

TEST(run_protocol, stores_and_retrieves_sech) {
    ProtocolResult r = run_protocol(MemoryParams{}, coupling(), ProtocolTiming{}, 1.0);
    EXPECT_GE(intensity(r), 0.999);
    EXPECT_LT(write_output_residual(r), 1e-3);
    EXPECT_NEAR(r.schedule.grid().t_end(), 5.0 + 13.0, 1e-9);
}

TEST(run_protocol, mirror_error_is_the_truncated_tail) {
    // The write window closes at tau = 5 with a(0) = sech(5) still in the cavity.
    // That excitation leaks during the hold and then rings down at the start of the read.
    ProtocolResult r = run_protocol(MemoryParams{}, coupling(), ProtocolTiming{}, 1.0);
    const double tail = sech_ref(5.0);
    EXPECT_NEAR(std::abs(r.trajectory.a[r.schedule.range(Phase::write).last - 1]), tail, 1e-3 * tail);
    EXPECT_NEAR(vacuum_output_residual(r), tail, 0.01 * tail);
    EXPECT_LT(mirror_error(r, 5.0), 1.1 * tail);
    EXPECT_LT(mirror_error(r, 11.0), 1e-3);
}

TEST(run_protocol, zero_amplitude_gives_vacuum) {
    ProtocolResult r = run_protocol(MemoryParams{}, coupling(), ProtocolTiming{}, 0.0);
    EXPECT_EQ(r.A_out.peak_abs(), 0.0);
    EXPECT_THROW(vacuum_output_residual(r), DegenerateInput);
    EXPECT_THROW(efficiency(r), DegenerateInput);
}

TEST(run_protocol, linear_in_amplitude) {
    Design d = coupling();
    ProtocolResult unit = run_protocol(MemoryParams{1.0, 0.02}, d, ProtocolTiming{}, 1.0);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 3; ++trial) {
        const cplx c(normal(rng), normal(rng));
        ProtocolResult r = run_protocol(MemoryParams{1.0, 0.02}, d, ProtocolTiming{}, c);
        double worst = 0;
        for (std::size_t k = 0; k < r.A_out.size(); ++k) {
            worst = std::max(worst, std::abs(r.A_out[k] - c * unit.A_out[k]));
        }
        EXPECT_LT(worst, 1e-12 * std::abs(c));
    }
}

TEST(run_protocol, efficiency_independent_of_amplitude) {
    Design d = coupling();
    const double ref = intensity(run_protocol(MemoryParams{1.0, 0.01}, d, ProtocolTiming{}, 1.0));
    for (cplx a0 : {cplx(0.1, 0), cplx(10, 0), cplx(0, -3)}) {
        EXPECT_NEAR(intensity(run_protocol(MemoryParams{1.0, 0.01}, d, ProtocolTiming{}, a0)), ref, 1e-12);
    }
}

TEST(run_protocol, lossless_energy_balance) {
    ProtocolResult r = run_protocol(MemoryParams{}, coupling(), ProtocolTiming{}, 1.0);
    const double in = l2_norm_sq(r.A_in), out = l2_norm_sq(r.A_out);
    const std::size_t last = r.A_out.size() - 1;
    const double left = std::norm(r.trajectory.a[last]) + std::norm(r.trajectory.b[last]);
    EXPECT_NEAR(in, 4.0, 1e-3);
    EXPECT_NEAR(in - out - left, 0.0, 1e-3 * in);
}

TEST(run_protocol, converges_under_step_halving) {
    const double coarse = intensity(run_protocol(MemoryParams{1.0, 0.0125}, coupling(1e-3), ProtocolTiming{}, 1.0));
    const double fine = intensity(run_protocol(MemoryParams{1.0, 0.0125}, coupling(5e-4), ProtocolTiming{}, 1.0));
    EXPECT_LT(std::abs(coarse - fine), 1e-6);
}

TEST(run_protocol, hold_decay_is_exact) {
    const double gamma = 0.05, T = 7.0;
    ProtocolResult r = run_protocol(MemoryParams{1.0, gamma}, coupling(), ProtocolTiming{kT0, T}, 1.0);
    const cplx before = r.trajectory.b[r.schedule.range(Phase::write).last - 1];
    const cplx after = r.trajectory.b[r.schedule.range(Phase::read).first];
    EXPECT_NEAR(std::abs(after / before - std::exp(-gamma * T)), 0.0, 1e-12);
}

TEST(run_protocol, spin_decay_reduces_efficiency) {
    const Design d = coupling();
    const double e0 = std::sqrt(intensity(run_protocol(MemoryParams{1.0, 0.0}, d, ProtocolTiming{}, 1.0)));
    const double e1 = std::sqrt(intensity(run_protocol(MemoryParams{1.0, 0.0125}, d, ProtocolTiming{}, 1.0)));
    const double e2 = std::sqrt(intensity(run_protocol(MemoryParams{1.0, 0.05}, d, ProtocolTiming{}, 1.0)));
    EXPECT_NEAR(e0, 1.0, 1e-3);
    EXPECT_NEAR(e1, 0.84, 0.02);
    EXPECT_NEAR(e2, 0.50, 0.02);
}

TEST(run_protocol, uncoupled_cavity_reflects) {
    const Design d = coupling();
    const CouplingDesign &c = std::get<CouplingDesign>(d);
    const TimeGrid &g = c.schedule.grid();
    CouplingDesign off{write_only(g, std::vector<double>(g.size())), c.a_target, c.b_target, c.t0};
    ProtocolResult r = run_protocol(MemoryParams{}, off, ProtocolTiming{}, 1.0);
    EXPECT_GT(write_output_residual(r), 0.3);
}

TEST(run_protocol, detuning_design) {
    const double dt = 1.25e-5;
    Design d = design_detuning_sech(kT0, make_write_grid(kT0, dt));
    ProtocolResult r = run_protocol(MemoryParams{}, d, ProtocolTiming{}, 1.0);
    EXPECT_GE(intensity(r), 0.999);
    EXPECT_LT(write_output_residual(r), 1e-3);
    EXPECT_THROW(run_protocol(MemoryParams{2.0, 0.0}, d, ProtocolTiming{}, 1.0), InvalidArgument);
}

TEST(run_protocol, detuned_hold_keeps_most_of_the_excitation) {
    HoldOptions hold{HoldOptions::Mode::detuned, 50.0};
    ProtocolResult r = run_protocol(MemoryParams{}, coupling(), ProtocolTiming{kT0, 2.0}, 1.0, hold);
    EXPECT_GT(intensity(r), 0.95);
    EXPECT_THROW(run_protocol(MemoryParams{}, coupling(2e-3), ProtocolTiming{kT0, 2.0}, 1.0, hold), StiffnessError);
}

TEST(run_protocol, rejects_inconsistent_timing) {
    Design d = coupling();
    EXPECT_THROW(run_protocol(MemoryParams{}, d, ProtocolTiming{-4.0, 5.0}, 1.0), InvalidArgument);
    EXPECT_THROW(run_protocol(MemoryParams{}, d, ProtocolTiming{kT0, -1.0}, 1.0), InvalidArgument);
    EXPECT_THROW(run_protocol(MemoryParams{}, d, ProtocolTiming{kT0, 5.0}, cplx(NAN, 0)), InvalidArgument);
    EXPECT_THROW(run_protocol(MemoryParams{-1.0, 0.0}, d, ProtocolTiming{}, 1.0), InvalidArgument);
}

TEST(protocol_timing, memory_regime) {
    EXPECT_TRUE((ProtocolTiming{kT0, 5.0}).memory_regime());
    EXPECT_FALSE((ProtocolTiming{kT0, 0.5}).memory_regime());
}
