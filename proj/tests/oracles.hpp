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

// Independent reference values and small helpers shared by the test suites.

#ifndef QMEM_TESTS_ORACLES_HPP
#define QMEM_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace qmem_test {

inline double sech_ref(double x) { return 2.0 / (std::exp(x) + std::exp(-x)); }
inline double tanh_ref(double x) { return (std::exp(x) - std::exp(-x)) / (std::exp(x) + std::exp(-x)); }

/// Composite Simpson rule on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)> &f, double lo, double hi, int n = 20000) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    }
    return s * h / 3.0;
}

/// Second-order central difference; one-sided at the ends.
inline std::vector<double> central_diff(const std::vector<double> &y, double dt) {
    const std::size_t n = y.size();
    std::vector<double> d(n);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        d[k] = (y[k + 1] - y[k - 1]) / (2 * dt);
    }
    d[0] = (y[1] - y[0]) / dt;
    d[n - 1] = (y[n - 1] - y[n - 2]) / dt;
    return d;
}

}  // namespace qmem_test

#endif
