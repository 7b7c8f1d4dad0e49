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

#ifndef QMEM_PULSE_DESIGN_HPP
#define QMEM_PULSE_DESIGN_HPP

#include <array>
#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "qmem/signal.hpp"

namespace qmem {

/// Fixed damping rates. kappa sets the time unit and is 1 in every shipped scenario.
struct MemoryParams {
    double kappa = 1.0;
    double gamma = 0.0;

    void validate() const;
};

enum class Phase { write, hold, read };

std::string_view phase_name(Phase p) noexcept;

/// Half-open index range [first, last).
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const noexcept { return last - first; }
    bool empty() const noexcept { return last == first; }
    bool contains(std::size_t k) const noexcept { return k >= first && k < last; }
};

/// Time-dependent coupling g(t), cavity detuning delta(t) and oscillator detuning Delta(t),
/// all real, together with the write/hold/read partition of the grid.
class ControlSchedule {
   public:
    ControlSchedule(TimeGrid grid, std::vector<double> g, std::vector<double> delta,
                    std::vector<double> Delta, std::array<IndexRange, 3> phases);

    const TimeGrid &grid() const noexcept { return grid_; }
    std::span<const double> g() const noexcept { return g_; }
    std::span<const double> delta() const noexcept { return delta_; }
    std::span<const double> Delta() const noexcept { return Delta_; }
    const IndexRange &range(Phase p) const noexcept { return phases_[static_cast<std::size_t>(p)]; }
    Phase phase_at(std::size_t k) const noexcept;

   private:
    TimeGrid grid_;
    std::vector<double> g_;
    std::vector<double> delta_;
    std::vector<double> Delta_;
    std::array<IndexRange, 3> phases_;
};

/// Variable-coupling write design. a_target is the cavity amplitude for unit a0;
/// b_target the matching oscillator amplitude.
struct CouplingDesign {
    ControlSchedule schedule;
    Envelope a_target;
    Envelope b_target;
    double t0;
};

/// Variable-detuning write design (g = kappa = 1). b = b1 + i*b2.
struct DetuningDesign {
    ControlSchedule schedule;
    Envelope a_target;
    Envelope b1;
    Envelope b2;
    double t0;
};

using Design = std::variant<CouplingDesign, DetuningDesign>;

const ControlSchedule &write_schedule(const Design &d) noexcept;
const Envelope &cavity_target(const Design &d) noexcept;
double arrival_time(const Design &d) noexcept;

/// How the memory idles between write and read.
struct HoldOptions {
    enum class Mode { decoupled, detuned };
    Mode mode = Mode::decoupled;
    /// Oscillator detuning used when mode == detuned (g = 1 during the hold).
    double detuning = 50.0;
};

inline constexpr double kLeadWidths = 8.0;
inline constexpr double kMaxDetuningWindow = 6.0;

/// Write-phase grid that ends exactly at t = 0 and starts at least `lead` pulse widths
/// before t0. The start is pushed earlier so that 0 lands on a sample.
TimeGrid make_write_grid(double t0, double dt, double lead = kLeadWidths);

/// g(t) = -sech(t - t0), the coupling that absorbs a sech pulse arriving at t0 without reflection.
CouplingDesign design_coupling_sech(double t0, const TimeGrid &grid);

/// Coupling that absorbs an arbitrary real, nonnegative cavity envelope (unit-scale shape).
/// Requires the envelope to start empty; throws DesignInfeasible when no real b exists.
CouplingDesign design_coupling_general(const Envelope &a_desired, const MemoryParams &params);

/// Detunings that absorb a sech pulse at fixed g = kappa = 1. The write window may extend at most
/// `max_window` widths past t0 because delta grows like e^(t - t0).
DetuningDesign design_detuning_sech(double t0, const TimeGrid &grid,
                                    double max_window = kMaxDetuningWindow);

/// Full write/hold/read schedule. The read controls are the write controls mirrored about
/// t = T_hold/2: g_read(t) = g(T_hold - t), (delta, Delta)_read(t) = -(delta, Delta)(T_hold - t).
/// Requires the design grid to end at t = 0 and T_hold to be a whole number of steps.
ControlSchedule time_reversed_readout(const Design &design, double T_hold, const HoldOptions &hold = {});

/// Number of grid steps spanned by T_hold on a grid with step dt.
std::size_t hold_steps(double T_hold, double dt);

}  // namespace qmem

#endif
