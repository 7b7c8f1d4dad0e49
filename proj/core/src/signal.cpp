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

#include "qmem/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmem/errors.hpp"

namespace qmem {

namespace {

constexpr double kMaxGridIntervals = 1e8;

}  // namespace

TimeGrid::TimeGrid(double t_start, double dt, std::size_t n_points)
    : t_start_(t_start), dt_(dt), n_points_(n_points) {
    if (!std::isfinite(t_start) || !std::isfinite(dt) || !(dt > 0)) {
        throw InvalidArgument("time grid needs a finite start and a positive step");
    }
    if (n_points < 2) {
        throw InvalidArgument("time grid needs at least two points");
    }
}

std::size_t TimeGrid::nearest_index(double t) const noexcept {
    double k = std::round((t - t_start_) / dt_);
    if (!(k > 0)) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(k), n_points_ - 1);
}

TimeGrid TimeGrid::sub(std::size_t first, std::size_t count) const {
    if (first + count > n_points_) {
        throw InvalidArgument("sub-grid runs past the end of the grid");
    }
    return TimeGrid(at(first), dt_, count);
}

bool TimeGrid::matches(const TimeGrid &other) const noexcept {
    return n_points_ == other.n_points_ && std::abs(dt_ - other.dt_) <= 1e-12 * dt_ &&
           std::abs(t_start_ - other.t_start_) <= 1e-6 * dt_;
}

TimeGrid make_grid(double t_start, double t_end, double dt) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(dt)) {
        throw InvalidArgument("grid bounds and step must be finite");
    }
    if (!(dt > 0)) {
        throw InvalidArgument("grid step must be positive");
    }
    if (!(t_end > t_start)) {
        throw InvalidArgument("grid end must lie after its start");
    }
    double intervals = (t_end - t_start) / dt;
    if (intervals > kMaxGridIntervals) {
        throw InvalidArgument("grid would exceed 1e8 intervals");
    }
    // Round up, with slack for spans that are whole multiples of dt up to round-off.
    auto n = static_cast<std::size_t>(std::ceil(intervals - 1e-9));
    return TimeGrid(t_start, dt, std::max<std::size_t>(n, 1) + 1);
}

Envelope::Envelope(TimeGrid grid, std::vector<cplx> samples) : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) {
        throw InvalidArgument("envelope has " + std::to_string(samples_.size()) + " samples for a grid of " +
                              std::to_string(grid_.size()));
    }
    for (const cplx &s : samples_) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw InvalidArgument("envelope samples must be finite");
        }
    }
}

Envelope Envelope::zeros(const TimeGrid &grid) { return Envelope(grid, std::vector<cplx>(grid.size())); }

Envelope Envelope::from_real(const TimeGrid &grid, std::span<const double> values) {
    return Envelope(grid, std::vector<cplx>(values.begin(), values.end()));
}

Envelope Envelope::slice(std::size_t first, std::size_t count) const {
    TimeGrid g = grid_.sub(first, count);
    return Envelope(g, std::vector<cplx>(samples_.begin() + static_cast<std::ptrdiff_t>(first),
                                         samples_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

Envelope Envelope::scaled(cplx factor) const {
    std::vector<cplx> out(samples_);
    for (cplx &s : out) {
        s *= factor;
    }
    return Envelope(grid_, std::move(out));
}

Envelope Envelope::reversed_onto(const TimeGrid &target) const {
    if (target.size() != grid_.size() || std::abs(target.dt() - grid_.dt()) > 1e-12 * grid_.dt()) {
        throw InvalidArgument("reversal target must have the same size and step");
    }
    return Envelope(target, std::vector<cplx>(samples_.rbegin(), samples_.rend()));
}

bool Envelope::is_real() const noexcept {
    return std::all_of(samples_.begin(), samples_.end(), [](const cplx &s) { return s.imag() == 0.0; });
}

double Envelope::peak_abs() const noexcept {
    double m = 0;
    for (const cplx &s : samples_) {
        m = std::max(m, std::abs(s));
    }
    return m;
}

std::vector<double> Envelope::real_part() const {
    std::vector<double> out(samples_.size());
    std::transform(samples_.begin(), samples_.end(), out.begin(), [](const cplx &s) { return s.real(); });
    return out;
}

ModeFunction::ModeFunction(Envelope envelope) : envelope_(std::move(envelope)) {
    double n = l2_norm_sq(envelope_);
    if (std::abs(n - 1.0) > kModeNormTolerance) {
        throw InvalidArgument("mode function is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
}

double trapezoid(std::span<const double> values, double dt) noexcept {
    if (values.empty()) {
        return 0;
    }
    double sum = 0;
    for (double v : values) {
        sum += v;
    }
    return dt * (sum - 0.5 * (values.front() + values.back()));
}

cplx trapezoid(std::span<const cplx> values, double dt) noexcept {
    if (values.empty()) {
        return {};
    }
    cplx sum = 0;
    for (const cplx &v : values) {
        sum += v;
    }
    return dt * (sum - 0.5 * (values.front() + values.back()));
}

Envelope sech_input(double a0, double t0, const TimeGrid &grid) {
    if (!std::isfinite(a0) || !std::isfinite(t0)) {
        throw InvalidArgument("sech input needs finite amplitude and arrival time");
    }
    std::vector<cplx> s(grid.size());
    const double scale = std::sqrt(2.0) * a0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] = scale / std::cosh(grid.at(k) - t0);
    }
    return Envelope(grid, std::move(s));
}

double l2_norm_sq(const Envelope &e) {
    std::vector<double> p(e.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = std::norm(e[k]);
    }
    return trapezoid(p, e.grid().dt());
}

ModeFunction normalize_mode(const Envelope &e) {
    double n = l2_norm_sq(e);
    if (!(n > 0)) {
        throw DegenerateInput("cannot normalize an envelope with zero norm");
    }
    return ModeFunction(e.scaled(1.0 / std::sqrt(n)));
}

ModeAmplitude project(const ModeFunction &u, const Envelope &field) {
    if (!u.grid().matches(field.grid())) {
        throw InvalidArgument("mode and field live on different grids");
    }
    std::vector<cplx> overlap(field.size());
    auto us = u.envelope().samples();
    auto fs = field.samples();
    for (std::size_t k = 0; k < overlap.size(); ++k) {
        overlap[k] = std::conj(us[k]) * fs[k];
    }
    return {trapezoid(overlap, field.grid().dt())};
}

}  // namespace qmem
