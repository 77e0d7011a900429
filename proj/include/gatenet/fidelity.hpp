// fidelity.hpp — State fidelity, the exact Haar-averaged gate fidelity
//
//   F̄ = 1/(D+1) + (1/(D(D+1))) sum_{ijkl} U*_{ik} E^{ij,kl} U_{jl},
//
// analytic gradients of both with respect to the free parameters, Haar
// sampling, and sampled fidelity statistics. The average fidelity is always
// computed from the exact superoperator; sampling happens only in
// fidelity_variance, where the spread is the quantity of interest.

#pragma once

#include <cstdint>

#include "gatenet/dynamics.hpp"
#include "gatenet/gates.hpp"
#include "gatenet/network.hpp"
#include "gatenet/rng.hpp"

namespace gatenet {

struct FidelityReport {
    double f_bar = 0.0;          // exact average fidelity at the same point
    double sample_mean = 0.0;    // Monte-Carlo mean of F_psi over Haar states
    double sample_variance = 0.0; // unbiased sample variance
    int num_samples = 0;
    std::uint64_t seed = 0;
};

// F_psi = <psi| U† E[|psi><psi|] U |psi>; psi must be normalized (1e-10).
double state_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                      const AncillaState& ancilla, const Vector& psi, const GateTarget& target);
// Same, reusing a precomputed network propagator.
double state_fidelity_with(const Matrix& u, const NetworkSpec& spec, const AncillaState& ancilla,
                           const Vector& psi, const GateTarget& target);

// Exact Haar average via the superoperator contraction above.
double avg_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                    const AncillaState& ancilla, const GateTarget& target);
double avg_fidelity_with(const Superoperator& e, const GateTarget& target);

// Analytic gradient of F_psi over all free parameters (tie groups, then
// (eta, xi) when the ancilla state is trainable; `ancilla` must then be the
// state built from lambda's angles).
std::vector<double> grad_state_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                                        const AncillaState& ancilla, const Vector& psi,
                                        const GateTarget& target);

// Analytic gradient of F̄ over the same parameter layout.
std::vector<double> grad_avg_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                                      const AncillaState& ancilla, const GateTarget& target);

// Haar-uniform pure state: i.i.d. standard complex Gaussian entries,
// normalized.
Vector sample_haar_state(int dim, Rng& rng);

// Sampled F_psi statistics over num_samples (>= 2) Haar states; deterministic
// given the seed.
FidelityReport fidelity_variance(const NetworkSpec& spec, const ParameterVector& lambda,
                                 const AncillaState& ancilla, const GateTarget& target,
                                 int num_samples, std::uint64_t seed);

} // namespace gatenet
