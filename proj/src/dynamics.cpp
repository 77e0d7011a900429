#include "gatenet/dynamics.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gatenet {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kDegeneracyTol = 1e-9;
} // namespace

Matrix EigenSystem::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenSystem eig_hermitian(const Matrix& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eig_hermitian: matrix must be square");
    if (!is_hermitian(h, 1e-10)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

EigenSystem eig_hermitian(const HermitianOperator& h) { return eig_hermitian(h.to_matrix()); }

Matrix propagator(const EigenSystem& es) {
    const Eigen::Index d = es.eigenvalues.size();
    Vector phases(d);
    for (Eigen::Index k = 0; k < d; ++k) phases(k) = std::exp(-kI * es.eigenvalues(k));
    return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

Matrix propagator(const HermitianOperator& h) { return propagator(eig_hermitian(h)); }

Matrix propagator_derivative(const EigenSystem& es, const Matrix& dh) {
    const Eigen::Index d = es.eigenvalues.size();
    if (dh.rows() != d || dh.cols() != d)
        throw std::invalid_argument("propagator_derivative: dimension mismatch");
    const Matrix m = es.eigenvectors.adjoint() * dh * es.eigenvectors;
    Matrix g(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            const double ea = es.eigenvalues(a);
            const double eb = es.eigenvalues(b);
            Complex gamma;
            if (std::abs(ea - eb) < kDegeneracyTol) {
                gamma = -kI * std::exp(-kI * ea);
            } else {
                gamma = (std::exp(-kI * ea) - std::exp(-kI * eb)) / Complex(ea - eb);
            }
            g(a, b) = m(a, b) * gamma;
        }
    }
    return es.eigenvectors * g * es.eigenvectors.adjoint();
}

Matrix propagator_derivative(const HermitianOperator& h, const HermitianOperator& dh) {
    if (h.num_qubits() != dh.num_qubits())
        throw std::invalid_argument("propagator_derivative: qubit count mismatch");
    return propagator_derivative(eig_hermitian(h), dh.to_matrix());
}

namespace {

// rho_Q ⊗ |psi_A><psi_A| in the register-first global ordering.
Matrix joint_input(const NetworkSpec& spec, const AncillaState& ancilla, const Matrix& rho_q) {
    const Eigen::Index dq = spec.register_dim();
    const Eigen::Index da = spec.ancilla_dim();
    if (rho_q.rows() != dq || rho_q.cols() != dq)
        throw std::invalid_argument("apply_channel: register matrix dimension mismatch");
    if (ancilla.amplitudes.size() != da)
        throw std::invalid_argument("apply_channel: ancilla state dimension mismatch");
    if (da == 1) return rho_q;
    return kron(rho_q, ancilla.amplitudes * ancilla.amplitudes.adjoint());
}

} // namespace

Matrix apply_channel_with(const Matrix& u, const NetworkSpec& spec, const AncillaState& ancilla,
                          const Matrix& rho_q) {
    const Matrix joint = joint_input(spec, ancilla, rho_q);
    const Matrix evolved = u * joint * u.adjoint();
    if (spec.ancilla_sites().empty()) return evolved;
    return partial_trace(evolved, spec.register_sites(), spec.num_qubits());
}

Matrix apply_channel(const NetworkSpec& spec, const ParameterVector& lambda,
                     const AncillaState& ancilla, const Matrix& rho_q) {
    return apply_channel_with(propagator(assemble_hamiltonian(spec, lambda)), spec, ancilla, rho_q);
}

Matrix Superoperator::choi() const {
    const Eigen::Index d = dim;
    Matrix c(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index k = 0; k < d; ++k)
                for (Eigen::Index l = 0; l < d; ++l)
                    c(k * d + i, l * d + j) = tensor(i * d + j, k * d + l);
    return c;
}

double Superoperator::trace_preservation_defect() const {
    const Eigen::Index d = dim;
    double defect = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            Complex sum = 0.0;
            for (Eigen::Index i = 0; i < d; ++i) sum += tensor(i * d + i, k * d + l);
            if (k == l) sum -= 1.0;
            defect = std::max(defect, std::abs(sum));
        }
    }
    return defect;
}

Superoperator superoperator_with(const Matrix& u, const NetworkSpec& spec,
                                 const AncillaState& ancilla) {
    const Eigen::Index d = spec.register_dim();
    Superoperator e;
    e.dim = static_cast<int>(d);
    e.tensor.resize(d * d, d * d);
    Matrix basis_op = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            basis_op(k, l) = 1.0;
            const Matrix out = apply_channel_with(u, spec, ancilla, basis_op);
            basis_op(k, l) = 0.0;
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j) e.tensor(i * d + j, k * d + l) = out(i, j);
        }
    }
    return e;
}

Superoperator superoperator(const NetworkSpec& spec, const ParameterVector& lambda,
                            const AncillaState& ancilla) {
    return superoperator_with(propagator(assemble_hamiltonian(spec, lambda)), spec, ancilla);
}

FactorizationResult factorization_check(const Matrix& u, int register_qubits, int ancilla_qubits,
                                        double rank_tol) {
    if (register_qubits < 1 || ancilla_qubits < 1)
        throw std::invalid_argument("factorization_check: both cut sides need at least one qubit");
    const Eigen::Index dq = Eigen::Index{1} << register_qubits;
    const Eigen::Index da = Eigen::Index{1} << ancilla_qubits;
    if (u.rows() != dq * da || u.cols() != dq * da)
        throw std::invalid_argument("factorization_check: dimension does not match the split");

    // Reshuffle u_{(ia),(kb)} into r_{(ik),(ab)}; a product P ⊗ W becomes the
    // rank-1 outer product vec(P) vec(W)^T.
    Matrix r(dq * dq, da * da);
    for (Eigen::Index i = 0; i < dq; ++i)
        for (Eigen::Index k = 0; k < dq; ++k)
            for (Eigen::Index a = 0; a < da; ++a)
                for (Eigen::Index b = 0; b < da; ++b)
                    r(i * dq + k, a * da + b) = u(i * da + a, k * da + b);

    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();

    FactorizationResult res;
    res.schmidt_ratio = sv.size() > 1 && sv(0) > 0.0 ? sv(1) / sv(0) : 0.0;
    res.factorizes = sv(0) > 0.0 && res.schmidt_ratio < rank_tol;
    if (!res.factorizes) return res;

    Matrix left(dq, dq), right(da, da);
    for (Eigen::Index i = 0; i < dq; ++i)
        for (Eigen::Index k = 0; k < dq; ++k) left(i, k) = svd.matrixU()(i * dq + k, 0);
    for (Eigen::Index a = 0; a < da; ++a)
        for (Eigen::Index b = 0; b < da; ++b) right(a, b) = std::conj(svd.matrixV()(a * da + b, 0));

    // Normalize: left unitary-scaled (Frobenius sqrt(dq)) with first nonzero
    // entry real positive; right absorbs the remaining scale and phase.
    Complex phase = 1.0;
    for (Eigen::Index idx = 0; idx < left.size(); ++idx) {
        const Complex v = left(idx / dq, idx % dq);
        if (std::abs(v) > 1e-9) {
            phase = std::conj(v) / std::abs(v);
            break;
        }
    }
    left *= phase * std::sqrt(static_cast<double>(dq));
    right *= sv(0) / (phase * std::sqrt(static_cast<double>(dq)));
    res.left = std::move(left);
    res.right = std::move(right);
    return res;
}

} // namespace gatenet
