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

#ifndef QMEM_DYNAMICS_HPP
#define QMEM_DYNAMICS_HPP

#include "qmem/pulse_design.hpp"
#include "qmem/signal.hpp"

namespace qmem {

struct ProtocolTiming {
    double t0 = -5.0;
    double T_hold = 5.0;
    /// Nominal input duration (one sech width).
    double T_I = 1.0;

    void validate() const;
    /// Storage is only meaningful once it outlasts the pulse.
    bool memory_regime() const noexcept { return T_hold > T_I; }
};

struct StateTrajectory {
    Envelope a;
    Envelope b;
};

struct ProtocolResult {
    StateTrajectory trajectory;
    Envelope A_in;
    Envelope A_out;
    ControlSchedule schedule;
    ProtocolTiming timing;
    MemoryParams params;
};

/// Largest |rate| * dt accepted by the fixed-step integrator.
inline constexpr double kResolutionLimit = 0.05;

/// Largest step that keeps dt*max(|g|, |delta|, |Delta|, kappa) within kResolutionLimit.
double max_stable_step(const ControlSchedule &schedule, const MemoryParams &params);

/// Throws StiffnessError naming the fastest control if the schedule's step is too coarse.
void check_resolution(const ControlSchedule &schedule, const MemoryParams &params);

/// Fixed-step RK4 sweep of
///   da/dt = -(kappa + i delta) a + g b + sqrt(2 kappa) A_in
///   db/dt = -(gamma + i Delta) b - g a
/// over the whole schedule grid, with vacuum oscillator noise. Controls and A_in are
/// interpolated linearly to the half steps.
StateTrajectory integrate(const MemoryParams &params, const ControlSchedule &schedule, const Envelope &A_in,
                          cplx a_init = {}, cplx b_init = {});

/// Write, hold and read a pulse of amplitude a0. The hold is advanced in closed form when the
/// memory is decoupled; A_out = sqrt(2 kappa) a - A_in on the full grid.
ProtocolResult run_protocol(const MemoryParams &params, const Design &design, const ProtocolTiming &timing,
                            cplx a0, const HoldOptions &hold = {});

/// max |A_out| over write and hold, relative to max |A_in|.
double vacuum_output_residual(const ProtocolResult &result);

/// Same ratio restricted to the write phase.
double write_output_residual(const ProtocolResult &result);

}  // namespace qmem

#endif
