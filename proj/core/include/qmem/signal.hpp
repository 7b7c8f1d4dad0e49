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

#ifndef QMEM_SIGNAL_HPP
#define QMEM_SIGNAL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qmem {

using cplx = std::complex<double>;

/// Uniform time axis in units of 1/kappa. Sample k sits at t_start + k*dt.
class TimeGrid {
   public:
    TimeGrid(double t_start, double dt, std::size_t n_points);

    double t_start() const noexcept { return t_start_; }
    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return n_points_; }
    double at(std::size_t k) const noexcept { return t_start_ + static_cast<double>(k) * dt_; }
    double t_end() const noexcept { return at(n_points_ - 1); }

    /// Index of the sample nearest to t (clamped to the grid).
    std::size_t nearest_index(double t) const noexcept;

    /// Grid made of samples [first, first + count).
    TimeGrid sub(std::size_t first, std::size_t count) const;

    /// Same sample times up to round-off.
    bool matches(const TimeGrid &other) const noexcept;

   private:
    double t_start_;
    double dt_;
    std::size_t n_points_;
};

/// Grid from t_start with step dt whose last point is the first sample at or past t_end.
TimeGrid make_grid(double t_start, double t_end, double dt);

/// Complex field amplitude sampled on a TimeGrid.
class Envelope {
   public:
    Envelope(TimeGrid grid, std::vector<cplx> samples);

    static Envelope zeros(const TimeGrid &grid);
    static Envelope from_real(const TimeGrid &grid, std::span<const double> values);

    const TimeGrid &grid() const noexcept { return grid_; }
    std::span<const cplx> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    cplx operator[](std::size_t k) const noexcept { return samples_[k]; }

    Envelope slice(std::size_t first, std::size_t count) const;
    Envelope scaled(cplx factor) const;
    /// Sample order reversed, placed on `target` (same size and step).
    Envelope reversed_onto(const TimeGrid &target) const;

    bool is_real() const noexcept;
    double peak_abs() const noexcept;
    std::vector<double> real_part() const;

   private:
    TimeGrid grid_;
    std::vector<cplx> samples_;
};

/// Temporal mode shape with unit L2 norm under the trapezoid rule.
class ModeFunction {
   public:
    /// Wraps an envelope that is already normalized; throws InvalidArgument otherwise.
    explicit ModeFunction(Envelope envelope);

    const Envelope &envelope() const noexcept { return envelope_; }
    const TimeGrid &grid() const noexcept { return envelope_.grid(); }

   private:
    Envelope envelope_;
};

struct ModeAmplitude {
    cplx value;
};

inline constexpr double kModeNormTolerance = 1e-9;

double trapezoid(std::span<const double> values, double dt) noexcept;
cplx trapezoid(std::span<const cplx> values, double dt) noexcept;

/// A_in = sqrt(2)*a0*sech(t - t0), the field that loads a cavity amplitude a0*sech(t - t0).
Envelope sech_input(double a0, double t0, const TimeGrid &grid);

ModeFunction normalize_mode(const Envelope &e);

/// Integral of conj(u(t)) * field(t) dt.
ModeAmplitude project(const ModeFunction &u, const Envelope &field);

double l2_norm_sq(const Envelope &e);

}  // namespace qmem

#endif
