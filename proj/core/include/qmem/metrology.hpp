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

#ifndef QMEM_METROLOGY_HPP
#define QMEM_METROLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qmem/dynamics.hpp"
#include "qmem/signal.hpp"

namespace qmem {

struct EfficiencyReport {
    /// sqrt(eta_M) = |a_out / a_in|
    double amplitude_efficiency;
    /// eta_M, clipped to [0, 1]
    double intensity_efficiency;
    ModeAmplitude in_amplitude;
    ModeAmplitude out_amplitude;
};

/// Input mode on the write window and its time mirror on the read window.
struct ReferenceModes {
    ModeFunction in;
    ModeFunction out;
};

ReferenceModes reference_modes(const ProtocolResult &result);

EfficiencyReport efficiency(const ProtocolResult &result, const ModeFunction &expected_out_mode,
                            const ModeFunction &in_mode);
EfficiencyReport efficiency(const ProtocolResult &result);

// Closed-form fidelities of a pure-loss memory with intensity efficiency eta.

/// Mean fidelity over a Gaussian ensemble of coherent states with mean photon number n_bar.
double coherent_fidelity(double eta, double n_bar);
/// Best measure-and-prepare fidelity for the same ensemble.
double classical_coherent_bound(double n_bar);
/// Efficiency at which coherent_fidelity reaches classical_coherent_bound.
double qm_efficiency_threshold(double n_bar);
/// Haar-averaged fidelity for states of at most n_m photons; closed forms exist for n_m = 1, 2.
double bounded_fidelity(double eta, int n_m);
/// Cloning limit 2/(n_m + 2).
double clone_bound(int n_m);
/// Efficiency at which bounded_fidelity(eta, n_m) crosses clone_bound(n_m), by bisection.
double bounded_fidelity_threshold(int n_m);

/// Pure state over Fock levels |0>..|n_m>.
class FockState {
   public:
    /// Throws InvalidArgument unless the vector is nonempty and normalized to 1e-12.
    explicit FockState(Eigen::VectorXcd coefficients);
    static FockState number(int n, int n_m);

    const Eigen::VectorXcd &coefficients() const noexcept { return c_; }
    int max_photons() const noexcept { return static_cast<int>(c_.size()) - 1; }

   private:
    Eigen::VectorXcd c_;
};

using DensityMatrix = Eigen::MatrixXcd;

/// Mixes the state with vacuum on a beam splitter of transmissivity eta and traces out the
/// reflected port.
DensityMatrix loss_channel(const FockState &state, double eta);
DensityMatrix loss_channel(const DensityMatrix &rho, double eta);

struct MonteCarloEstimate {
    double mean;
    double standard_error;
    std::size_t samples;
};

inline constexpr std::size_t kMinHaarSamples = 1000;

/// Average of <psi| loss_channel(psi, eta) |psi> over Haar-random psi in 1 + n_m levels.
/// Samples are split over fixed seed-derived substreams, so the estimate does not depend on
/// `workers` (0 = hardware concurrency).
MonteCarloEstimate haar_average_fidelity(double eta, int n_m, std::size_t n_samples, std::uint64_t seed,
                                         unsigned workers = 0);

struct Verdicts {
    bool coherent;
    bool bounded_1;
    bool bounded_2;
};

struct FidelityReport {
    double eta;
    double n_bar;
    double F_coherent;
    double F_classical_coherent;
    double eta_threshold;
    double F1;
    double F2;
    double clone_bound_1;
    double clone_bound_2;
    Verdicts verdicts;
};

FidelityReport fidelity_report(double eta, double n_bar);

}  // namespace qmem

#endif
