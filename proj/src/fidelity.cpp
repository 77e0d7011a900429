#include "gatenet/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace gatenet {

namespace {

void check_target(const NetworkSpec& spec, const GateTarget& target) {
    if (target.unitary.rows() != spec.register_dim())
        throw std::invalid_argument("target unitary does not act on the register");
}

void check_psi(const NetworkSpec& spec, const Vector& psi) {
    if (psi.size() != spec.register_dim())
        throw std::invalid_argument("state dimension does not match the register");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("state is not normalized");
}

// w_a = <target psi| ⊗ <a| applied to v; F_psi = ||w||^2.
Vector ancilla_overlaps(const NetworkSpec& spec, const Vector& phi, const Vector& v) {
    const Eigen::Index da = spec.ancilla_dim();
    const Eigen::Index dq = spec.register_dim();
    Vector w = Vector::Zero(da);
    for (Eigen::Index i = 0; i < dq; ++i) {
        const Complex c = std::conj(phi(i));
        for (Eigen::Index a = 0; a < da; ++a) w(a) += c * v(i * da + a);
    }
    return w;
}

Vector joint_state(const NetworkSpec& spec, const Vector& psi, const Vector& anc) {
    const Eigen::Index da = anc.size();
    Vector j(psi.size() * da);
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        for (Eigen::Index a = 0; a < da; ++a) j(i * da + a) = psi(i) * anc(a);
    return j;
}

// Tr_A[ a (x_q ⊗ rho_a) b† ] — the building block for the superoperator and
// its parameter derivatives.
Matrix reduced_sandwich(const NetworkSpec& spec, const Matrix& a, const Matrix& b,
                        const Matrix& x_q, const Matrix& rho_a) {
    const Matrix joint = spec.ancilla_sites().empty() ? x_q : kron(x_q, rho_a);
    const Matrix evolved = a * joint * b.adjoint();
    if (spec.ancilla_sites().empty()) return evolved;
    return partial_trace(evolved, spec.register_sites(), spec.num_qubits());
}

// sum_{ijkl} U*_{ik} G^{kl}_{ij} U_{jl} for a family of register matrices
// G^{kl} produced by `block`.
template <typename BlockFn>
Complex contract_with_target(const GateTarget& target, Eigen::Index d, BlockFn&& block) {
    Complex s = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            const Matrix g = block(k, l);
            s += (target.unitary.col(k).adjoint() * g * target.unitary.col(l))(0);
        }
    }
    return s;
}

struct AncillaDerivatives {
    Vector d_eta;
    Vector d_xi;
};

AncillaDerivatives ancilla_angle_derivatives(const ParameterVector& lambda,
                                             const NetworkSpec& spec) {
    const double eta = lambda.eta(spec);
    const double xi = lambda.xi(spec);
    const Complex phase = std::exp(Complex(0.0, xi));
    AncillaDerivatives d;
    d.d_eta.resize(2);
    d.d_eta << -std::sin(eta), phase * std::cos(eta);
    d.d_xi.resize(2);
    d.d_xi << 0.0, Complex(0.0, 1.0) * phase * std::sin(eta);
    return d;
}

} // namespace

double state_fidelity_with(const Matrix& u, const NetworkSpec& spec, const AncillaState& ancilla,
                           const Vector& psi, const GateTarget& target) {
    check_target(spec, target);
    check_psi(spec, psi);
    const Vector v = u * joint_state(spec, psi, ancilla.amplitudes);
    const Vector phi = target.unitary * psi;
    return ancilla_overlaps(spec, phi, v).squaredNorm();
}

double state_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                      const AncillaState& ancilla, const Vector& psi, const GateTarget& target) {
    return state_fidelity_with(propagator(assemble_hamiltonian(spec, lambda)), spec, ancilla, psi,
                               target);
}

double avg_fidelity_with(const Superoperator& e, const GateTarget& target) {
    const Eigen::Index d = e.dim;
    if (target.unitary.rows() != d)
        throw std::invalid_argument("avg_fidelity: target/superoperator dimension mismatch");
    const Complex s = contract_with_target(target, d, [&](Eigen::Index k, Eigen::Index l) {
        Matrix g(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) g(i, j) = e.at(static_cast<int>(i), static_cast<int>(j),
                                                               static_cast<int>(k), static_cast<int>(l));
        return g;
    });
    const double dd = static_cast<double>(d);
    return 1.0 / (dd + 1.0) + s.real() / (dd * (dd + 1.0));
}

double avg_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                    const AncillaState& ancilla, const GateTarget& target) {
    check_target(spec, target);
    return avg_fidelity_with(superoperator(spec, lambda, ancilla), target);
}

std::vector<double> grad_state_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                                        const AncillaState& ancilla, const Vector& psi,
                                        const GateTarget& target) {
    check_target(spec, target);
    check_psi(spec, psi);
    validate_parameters(spec, lambda);

    const EigenSystem es = eig_hermitian(assemble_hamiltonian(spec, lambda));
    const Matrix u = propagator(es);
    const Vector joint = joint_state(spec, psi, ancilla.amplitudes);
    const Vector phi = target.unitary * psi;
    const Vector w = ancilla_overlaps(spec, phi, u * joint);

    std::vector<double> grad(static_cast<std::size_t>(spec.num_parameters()), 0.0);
    for (int g = 0; g < spec.num_groups(); ++g) {
        const Matrix du = propagator_derivative(es, term_derivative(spec, g).to_matrix());
        const Vector dw = ancilla_overlaps(spec, phi, du * joint);
        grad[static_cast<std::size_t>(g)] = 2.0 * w.dot(dw).real(); // dot conjugates the left side
    }
    if (spec.ancilla_state_trainable()) {
        const AncillaDerivatives d = ancilla_angle_derivatives(lambda, spec);
        const Vector dw_eta = ancilla_overlaps(spec, phi, u * joint_state(spec, psi, d.d_eta));
        const Vector dw_xi = ancilla_overlaps(spec, phi, u * joint_state(spec, psi, d.d_xi));
        grad[grad.size() - 2] = 2.0 * w.dot(dw_eta).real();
        grad[grad.size() - 1] = 2.0 * w.dot(dw_xi).real();
    }
    return grad;
}

std::vector<double> grad_avg_fidelity(const NetworkSpec& spec, const ParameterVector& lambda,
                                      const AncillaState& ancilla, const GateTarget& target) {
    check_target(spec, target);
    validate_parameters(spec, lambda);

    const EigenSystem es = eig_hermitian(assemble_hamiltonian(spec, lambda));
    const Matrix u = propagator(es);
    const Eigen::Index d = spec.register_dim();
    const Matrix rho_a = ancilla.amplitudes * ancilla.amplitudes.adjoint();
    const double scale = 1.0 / (static_cast<double>(d) * (static_cast<double>(d) + 1.0));

    Matrix basis = Matrix::Zero(d, d);
    const auto basis_block = [&](Eigen::Index k, Eigen::Index l, const Matrix& a, const Matrix& b,
                                 const Matrix& rho) {
        basis(k, l) = 1.0;
        Matrix g = reduced_sandwich(spec, a, b, basis, rho);
        basis(k, l) = 0.0;
        return g;
    };

    std::vector<double> grad(static_cast<std::size_t>(spec.num_parameters()), 0.0);
    for (int g = 0; g < spec.num_groups(); ++g) {
        const Matrix du = propagator_derivative(es, term_derivative(spec, g).to_matrix());
        const Complex s = contract_with_target(target, d, [&](Eigen::Index k, Eigen::Index l) {
            return Matrix(basis_block(k, l, du, u, rho_a) + basis_block(k, l, u, du, rho_a));
        });
        grad[static_cast<std::size_t>(g)] = s.real() * scale;
    }
    if (spec.ancilla_state_trainable()) {
        const AncillaDerivatives dv = ancilla_angle_derivatives(lambda, spec);
        const Matrix drho_eta = dv.d_eta * ancilla.amplitudes.adjoint() +
                                ancilla.amplitudes * dv.d_eta.adjoint();
        const Matrix drho_xi = dv.d_xi * ancilla.amplitudes.adjoint() +
                               ancilla.amplitudes * dv.d_xi.adjoint();
        const Complex s_eta = contract_with_target(target, d, [&](Eigen::Index k, Eigen::Index l) {
            return basis_block(k, l, u, u, drho_eta);
        });
        const Complex s_xi = contract_with_target(target, d, [&](Eigen::Index k, Eigen::Index l) {
            return basis_block(k, l, u, u, drho_xi);
        });
        grad[grad.size() - 2] = s_eta.real() * scale;
        grad[grad.size() - 1] = s_xi.real() * scale;
    }
    return grad;
}

Vector sample_haar_state(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("sample_haar_state: dim must be positive");
    Vector v(dim);
    for (int k = 0; k < dim; ++k) v(k) = Complex(rng.normal(), rng.normal());
    const double n = v.norm();
    return v / n;
}

FidelityReport fidelity_variance(const NetworkSpec& spec, const ParameterVector& lambda,
                                 const AncillaState& ancilla, const GateTarget& target,
                                 int num_samples, std::uint64_t seed) {
    if (num_samples < 2) throw std::invalid_argument("fidelity_variance: need at least 2 samples");
    check_target(spec, target);
    const Matrix u = propagator(assemble_hamiltonian(spec, lambda));
    Rng rng(seed);
    double sum = 0.0;
    double sumsq = 0.0;
    for (int s = 0; s < num_samples; ++s) {
        const Vector psi = sample_haar_state(spec.register_dim(), rng);
        const double f = state_fidelity_with(u, spec, ancilla, psi, target);
        sum += f;
        sumsq += f * f;
    }
    FidelityReport rep;
    rep.num_samples = num_samples;
    rep.seed = seed;
    rep.sample_mean = sum / num_samples;
    rep.sample_variance = std::max(0.0, (sumsq - sum * sum / num_samples) / (num_samples - 1));
    rep.f_bar = avg_fidelity_with(superoperator_with(u, spec, ancilla), target);
    return rep;
}

} // namespace gatenet
