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

#include <algorithm>
#include <cmath>
#include <string>

#include "qmem/errors.hpp"

namespace qmem {

namespace {

struct PhaseControls {
    std::span<const double> g;
    std::span<const double> delta;
    std::span<const double> Delta;
    std::span<const cplx> drive;  // empty means no input field
};

struct Rates {
    cplx a;
    cplx b;
};

// Classic RK4 over consecutive samples, controls averaged to the half step.
void rk4_sweep(const MemoryParams &p, const PhaseControls &c, double dt, cplx a, cplx b, std::span<cplx> out_a,
               std::span<cplx> out_b) {
    const cplx I(0.0, 1.0);
    const double feed = std::sqrt(2.0 * p.kappa);
    const bool driven = !c.drive.empty();
    const auto rhs = [&](cplx x, cplx y, double g, double delta, double Delta, cplx drive) {
        return Rates{-(p.kappa + I * delta) * x + g * y + feed * drive, -(p.gamma + I * Delta) * y - g * x};
    };

    out_a[0] = a;
    out_b[0] = b;
    const std::size_t n = out_a.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double g0 = c.g[k], g1 = c.g[k + 1], gm = 0.5 * (g0 + g1);
        const double d0 = c.delta[k], d1 = c.delta[k + 1], dm = 0.5 * (d0 + d1);
        const double D0 = c.Delta[k], D1 = c.Delta[k + 1], Dm = 0.5 * (D0 + D1);
        const cplx u0 = driven ? c.drive[k] : cplx{}, u1 = driven ? c.drive[k + 1] : cplx{};
        const cplx um = 0.5 * (u0 + u1);

        const Rates k1 = rhs(a, b, g0, d0, D0, u0);
        const Rates k2 = rhs(a + 0.5 * dt * k1.a, b + 0.5 * dt * k1.b, gm, dm, Dm, um);
        const Rates k3 = rhs(a + 0.5 * dt * k2.a, b + 0.5 * dt * k2.b, gm, dm, Dm, um);
        const Rates k4 = rhs(a + dt * k3.a, b + dt * k3.b, g1, d1, D1, u1);
        a += dt / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
        b += dt / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
        out_a[k + 1] = a;
        out_b[k + 1] = b;
    }
}

template <class T>
std::span<const T> range_of(std::span<const T> v, std::size_t first, std::size_t last) {
    return v.subspan(first, last - first + 1);
}

double peak_abs(std::span<const double> v) {
    double m = 0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

}  // namespace

void ProtocolTiming::validate() const {
    if (!std::isfinite(t0) || !std::isfinite(T_hold) || !std::isfinite(T_I)) {
        throw InvalidArgument("protocol timing must be finite");
    }
    if (T_hold < 0) {
        throw InvalidArgument("hold time must be nonnegative");
    }
    if (!(T_I > 0)) {
        throw InvalidArgument("input duration must be positive");
    }
}

double max_stable_step(const ControlSchedule &schedule, const MemoryParams &params) {
    const double rate = std::max({peak_abs(schedule.g()), peak_abs(schedule.delta()), peak_abs(schedule.Delta()),
                                  params.kappa});
    return kResolutionLimit / rate;
}

void check_resolution(const ControlSchedule &schedule, const MemoryParams &params) {
    const std::pair<const char *, double> rates[] = {{"g", peak_abs(schedule.g())},
                                                     {"delta", peak_abs(schedule.delta())},
                                                     {"Delta", peak_abs(schedule.Delta())},
                                                     {"kappa", params.kappa}};
    const auto *fastest =
        std::max_element(std::begin(rates), std::end(rates), [](auto &l, auto &r) { return l.second < r.second; });
    const double dt = schedule.grid().dt();
    if (dt * fastest->second > kResolutionLimit * (1.0 + 1e-12)) {
        throw StiffnessError(fastest->first, fastest->second, dt, kResolutionLimit / fastest->second);
    }
}

StateTrajectory integrate(const MemoryParams &params, const ControlSchedule &schedule, const Envelope &A_in,
                          cplx a_init, cplx b_init) {
    params.validate();
    if (!schedule.grid().matches(A_in.grid())) {
        throw InvalidArgument("schedule and input field must share a grid");
    }
    check_resolution(schedule, params);
    const std::size_t n = schedule.grid().size();
    std::vector<cplx> a(n), b(n);
    rk4_sweep(params, {schedule.g(), schedule.delta(), schedule.Delta(), A_in.samples()}, schedule.grid().dt(),
              a_init, b_init, a, b);
    return {Envelope(schedule.grid(), std::move(a)), Envelope(schedule.grid(), std::move(b))};
}

ProtocolResult run_protocol(const MemoryParams &params, const Design &design, const ProtocolTiming &timing,
                            cplx a0, const HoldOptions &hold) {
    params.validate();
    timing.validate();
    if (!std::isfinite(a0.real()) || !std::isfinite(a0.imag())) {
        throw InvalidArgument("pulse amplitude must be finite");
    }
    if (std::abs(arrival_time(design) - timing.t0) > 1e-9 * std::max(1.0, std::abs(timing.t0))) {
        throw InvalidArgument("timing t0 does not match the design's arrival time");
    }
    if (std::holds_alternative<DetuningDesign>(design) && params.kappa != 1.0) {
        throw InvalidArgument("the detuning design assumes g = kappa = 1");
    }

    ControlSchedule schedule = time_reversed_readout(design, timing.T_hold, hold);
    check_resolution(schedule, params);

    const TimeGrid &grid = schedule.grid();
    const double dt = grid.dt();
    const std::size_t n = grid.size();
    const ControlSchedule &w = write_schedule(design);
    const std::size_t end_write = w.grid().size() - 1;
    const std::size_t start_read = end_write + hold_steps(timing.T_hold, dt);
    const double feed = std::sqrt(2.0 * params.kappa);

    std::vector<cplx> A_in(n);
    const Envelope &shape = cavity_target(design);
    for (std::size_t k = 0; k <= end_write; ++k) {
        A_in[k] = feed * a0 * shape[k];
    }

    std::vector<cplx> a(n), b(n);
    std::span<cplx> as(a), bs(b);

    rk4_sweep(params, {w.g(), w.delta(), w.Delta(), std::span<const cplx>(A_in).first(end_write + 1)}, dt, {}, {},
              as.first(end_write + 1), bs.first(end_write + 1));

    if (start_read > end_write) {
        const std::size_t len = start_read - end_write + 1;
        if (hold.mode == HoldOptions::Mode::decoupled) {
            // Controls are off: both modes just decay.
            const cplx a_w = a[end_write], b_w = b[end_write];
            for (std::size_t m = 1; m < len; ++m) {
                const double s = static_cast<double>(m) * dt;
                a[end_write + m] = a_w * std::exp(-params.kappa * s);
                b[end_write + m] = b_w * std::exp(-params.gamma * s);
            }
        } else {
            rk4_sweep(params,
                      {range_of(schedule.g(), end_write, start_read), range_of(schedule.delta(), end_write, start_read),
                       range_of(schedule.Delta(), end_write, start_read), {}},
                      dt, a[end_write], b[end_write], as.subspan(end_write, len), bs.subspan(end_write, len));
        }
    }

    // Read controls mirror the write controls; built here so that T_hold = 0 (where the
    // schedule's sample at t = 0 carries the write values) is handled uniformly.
    std::vector<double> g_r(end_write + 1), d_r(end_write + 1), D_r(end_write + 1);
    for (std::size_t j = 0; j <= end_write; ++j) {
        g_r[j] = w.g()[end_write - j];
        d_r[j] = -w.delta()[end_write - j];
        D_r[j] = -w.Delta()[end_write - j];
    }
    rk4_sweep(params, {g_r, d_r, D_r, {}}, dt, a[start_read], b[start_read], as.subspan(start_read),
              bs.subspan(start_read));

    std::vector<cplx> A_out(n);
    for (std::size_t k = 0; k < n; ++k) {
        A_out[k] = feed * a[k] - A_in[k];
    }

    return ProtocolResult{{Envelope(grid, std::move(a)), Envelope(grid, std::move(b))},
                          Envelope(grid, std::move(A_in)),
                          Envelope(grid, std::move(A_out)),
                          std::move(schedule),
                          timing,
                          params};
}

namespace {

double output_residual(const ProtocolResult &r, std::size_t last) {
    const double peak = r.A_in.peak_abs();
    if (!(peak > 0)) {
        throw DegenerateInput("input field is identically zero");
    }
    double m = 0;
    for (std::size_t k = 0; k < last; ++k) {
        m = std::max(m, std::abs(r.A_out[k]));
    }
    return m / peak;
}

}  // namespace

double vacuum_output_residual(const ProtocolResult &result) {
    return output_residual(result, result.schedule.range(Phase::hold).last);
}

double write_output_residual(const ProtocolResult &result) {
    return output_residual(result, result.schedule.range(Phase::write).last);
}

}  // namespace qmem
