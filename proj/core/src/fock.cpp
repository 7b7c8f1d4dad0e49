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

// Fock-space loss channel and the Haar Monte Carlo fidelity oracle.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "qmem/errors.hpp"
#include "qmem/metrology.hpp"

namespace qmem {

namespace {

constexpr std::size_t kHaarStreams = 64;

void require_eta(double eta) {
    if (!std::isfinite(eta) || eta < 0 || eta > 1) {
        throw InvalidArgument("transmissivity must lie in [0, 1]");
    }
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// Amplitude of |k>|n-k> when |n>|0> passes a beam splitter with transmission amplitude t.
double split_amplitude(int n, int k, double t, double r) {
    return std::sqrt(binomial(n, k)) * std::pow(t, k) * std::pow(r, n - k);
}

}  // namespace

FockState::FockState(Eigen::VectorXcd coefficients) : c_(std::move(coefficients)) {
    if (c_.size() == 0) {
        throw InvalidArgument("Fock state needs at least the vacuum level");
    }
    if (!c_.allFinite() || std::abs(c_.squaredNorm() - 1.0) > 1e-12) {
        throw InvalidArgument("Fock state must be normalized");
    }
}

FockState FockState::number(int n, int n_m) {
    if (n < 0 || n > n_m) {
        throw InvalidArgument("number state outside the truncated space");
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_m + 1);
    c(n) = 1.0;
    return FockState(std::move(c));
}

DensityMatrix loss_channel(const FockState &state, double eta) {
    require_eta(eta);
    const int levels = static_cast<int>(state.coefficients().size());
    const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);

    // Two-mode output: rows index the transmitted mode, columns the reflected mode.
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(levels, levels);
    for (int n = 0; n < levels; ++n) {
        const std::complex<double> c = state.coefficients()(n);
        for (int k = 0; k <= n; ++k) {
            joint(k, n - k) += c * split_amplitude(n, k, t, r);
        }
    }
    return joint * joint.adjoint();
}

DensityMatrix loss_channel(const DensityMatrix &rho, double eta) {
    require_eta(eta);
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw InvalidArgument("density matrix must be square and nonempty");
    }
    const int levels = static_cast<int>(rho.rows());
    const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);
    DensityMatrix out = DensityMatrix::Zero(levels, levels);
    // Kraus operators K_j|n> = split_amplitude(n, n - j)|n - j>, one per lost photon count j.
    for (int j = 0; j < levels; ++j) {
        Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(levels, levels);
        for (int n = j; n < levels; ++n) {
            K(n - j, n) = split_amplitude(n, n - j, t, r);
        }
        out += K * rho * K.adjoint();
    }
    return out;
}

MonteCarloEstimate haar_average_fidelity(double eta, int n_m, std::size_t n_samples, std::uint64_t seed,
                                         unsigned workers) {
    require_eta(eta);
    if (n_m < 1) {
        throw InvalidArgument("photon-number bound must be at least 1");
    }
    if (n_samples < kMinHaarSamples) {
        throw InvalidArgument("Haar average needs at least " + std::to_string(kMinHaarSamples) + " samples");
    }

    struct Partial {
        double sum = 0;
        double sum_sq = 0;
    };
    std::vector<Partial> partials(kHaarStreams);

    const auto run_stream = [&](std::size_t stream) {
        const std::size_t count = n_samples / kHaarStreams + (stream < n_samples % kHaarStreams ? 1 : 0);
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal;
        Eigen::VectorXcd c(n_m + 1);
        Partial p;
        for (std::size_t i = 0; i < count; ++i) {
            for (int k = 0; k <= n_m; ++k) {
                const double re = normal(rng);
                const double im = normal(rng);
                c(k) = {re, im};
            }
            c.normalize();
            const FockState psi(c);
            const double f = (c.adjoint() * loss_channel(psi, eta) * c)(0, 0).real();
            p.sum += f;
            p.sum_sq += f * f;
        }
        partials[stream] = p;
    };

    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, kHaarStreams));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t s; (s = next.fetch_add(1)) < kHaarStreams;) {
                run_stream(s);
            }
        });
    }
    for (std::size_t s; (s = next.fetch_add(1)) < kHaarStreams;) {
        run_stream(s);
    }
    for (auto &t : pool) {
        t.join();
    }

    double sum = 0, sum_sq = 0;
    for (const Partial &p : partials) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), n_samples};
}

}  // namespace qmem
