// dynamics.hpp — Exact propagation over the absorbed unit time: spectral
// decomposition, the propagator e^{-iH}, the reduced channel on the register,
// its superoperator tensor, propagator directional derivatives, and an
// operator-Schmidt factorization test.

#pragma once

#include "gatenet/network.hpp"
#include "gatenet/operators.hpp"

namespace gatenet {

struct EigenSystem {
    Eigen::VectorXd eigenvalues; // ascending
    Matrix eigenvectors;         // unitary, columns

    Matrix reconstruct() const; // V diag(e) V†
};

// Full spectral decomposition; input must be Hermitian (checked at 1e-10).
EigenSystem eig_hermitian(const Matrix& h);
EigenSystem eig_hermitian(const HermitianOperator& h);

// U = V diag(e^{-i e_k}) V†. Sign convention: the channel is generated by
// e^{-iH} (the paper's Fredkin network pins this down; see README).
Matrix propagator(const EigenSystem& es);
Matrix propagator(const HermitianOperator& h);

// Directional derivative of H -> e^{-iH} along dh, by divided differences in
// the eigenbasis: element (a,b) is (V† dh V)_{ab} * gamma_ab with
// gamma_ab = (e^{-i e_a} - e^{-i e_b}) / (e_a - e_b), and -i e^{-i e_a} when
// |e_a - e_b| < 1e-9 (exact degeneracies occur in the symmetric presets).
Matrix propagator_derivative(const EigenSystem& es, const Matrix& dh);
Matrix propagator_derivative(const HermitianOperator& h, const HermitianOperator& dh);

// rho_Q -> Tr_A[ U (rho_Q ⊗ |psi_A><psi_A|) U† ]. Accepts any register
// matrix (the channel extends by linearity); density matrices map to density
// matrices.
Matrix apply_channel_with(const Matrix& u, const NetworkSpec& spec, const AncillaState& ancilla,
                          const Matrix& rho_q);
Matrix apply_channel(const NetworkSpec& spec, const ParameterVector& lambda,
                     const AncillaState& ancilla, const Matrix& rho_q);

// E^{ij,kl} = <q_i| E[|q_k><q_l|] |q_j>, stored at (i*D+j, k*D+l).
struct Superoperator {
    int dim = 0;    // register dimension D
    Matrix tensor;  // D^2 x D^2

    Complex at(int i, int j, int k, int l) const {
        return tensor(static_cast<Eigen::Index>(i) * dim + j,
                      static_cast<Eigen::Index>(k) * dim + l);
    }
    // Choi matrix C_{(k,i),(l,j)} = E^{ij,kl}; Hermitian PSD for a channel.
    Matrix choi() const;
    // max |sum_i E^{ii,kl} - delta_kl| (trace-preservation defect).
    double trace_preservation_defect() const;
};

// Built column-by-column: each basis operator |q_k><q_l| is evolved through
// the channel.
Superoperator superoperator_with(const Matrix& u, const NetworkSpec& spec,
                                 const AncillaState& ancilla);
Superoperator superoperator(const NetworkSpec& spec, const ParameterVector& lambda,
                            const AncillaState& ancilla);

// Operator-Schmidt test across the register|ancilla cut: rank 1 (second
// Schmidt coefficient < 1e-6 of the first) means u = left ⊗ right. The left
// factor's first nonzero entry is made real positive.
struct FactorizationResult {
    bool factorizes = false;
    double schmidt_ratio = 0.0; // second / first singular value
    Matrix left;                // 2^{nq} x 2^{nq}, only valid when factorizes
    Matrix right;               // 2^{na} x 2^{na}
};
FactorizationResult factorization_check(const Matrix& u, int register_qubits, int ancilla_qubits,
                                        double rank_tol = 1e-6);

} // namespace gatenet
