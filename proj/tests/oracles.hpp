// oracles.hpp — Test-only reference implementations kept independent of the
// code paths they check: finite-difference derivatives, the closed form of
// the average fidelity for unitary channels, and random operator generators.

#pragma once

#include <functional>
#include <vector>

#include "gatenet/dynamics.hpp"
#include "gatenet/fidelity.hpp"
#include "gatenet/network.hpp"
#include "gatenet/operators.hpp"
#include "gatenet/rng.hpp"

namespace oracles {

using gatenet::HermitianOperator;
using gatenet::Matrix;
using gatenet::Vector;

// Central finite difference of H -> e^{-iH} along dh.
inline Matrix fd_propagator_derivative(const HermitianOperator& h, const HermitianOperator& dh,
                                       double step = 1e-5) {
    HermitianOperator plus = h;
    plus += step * HermitianOperator(dh);
    HermitianOperator minus = h;
    minus -= step * HermitianOperator(dh);
    return (gatenet::propagator(plus) - gatenet::propagator(minus)) / (2.0 * step);
}

// Central finite-difference gradient of a scalar over a parameter vector.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, double step = 1e-5) {
    std::vector<double> g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double saved = x[k];
        x[k] = saved + step;
        const double fp = f(x);
        x[k] = saved - step;
        const double fm = f(x);
        x[k] = saved;
        g[k] = (fp - fm) / (2.0 * step);
    }
    return g;
}

inline double rel_error(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        diff += (a[k] - b[k]) * (a[k] - b[k]);
        norm += b[k] * b[k];
    }
    return norm > 0.0 ? std::sqrt(diff / norm) : std::sqrt(diff);
}

// Average gate fidelity of a unitary channel V against target U:
// (D + |Tr(U† V)|^2) / (D (D + 1)).
inline double unitary_channel_fbar(const Matrix& target, const Matrix& v) {
    const double d = static_cast<double>(target.rows());
    const std::complex<double> tr = (target.adjoint() * v).trace();
    return (d + std::norm(tr)) / (d * (d + 1.0));
}

// Random Hermitian operator with Gaussian Pauli coefficients up to the given
// weight (full weight when max_weight <= 0).
inline HermitianOperator random_hermitian(int num_qubits, gatenet::Rng& rng, int max_weight = 0) {
    HermitianOperator op(num_qubits);
    std::vector<gatenet::Axis> axes(static_cast<std::size_t>(num_qubits));
    const std::size_t total = std::size_t{1} << (2 * num_qubits);
    for (std::size_t code = 1; code < total; ++code) {
        std::size_t c = code;
        for (int site = num_qubits - 1; site >= 0; --site) {
            axes[static_cast<std::size_t>(site)] = static_cast<gatenet::Axis>(c & 3);
            c >>= 2;
        }
        gatenet::PauliString p{axes};
        if (max_weight > 0 && p.weight() > max_weight) continue;
        op.add_term(p, rng.normal());
    }
    return op;
}

// Random dense Hermitian matrix (GUE-style entries).
inline Matrix random_hermitian_matrix(Eigen::Index dim, gatenet::Rng& rng) {
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            m(i, j) = std::complex<double>(rng.normal(), rng.normal());
    return 0.5 * (m + m.adjoint());
}

// Haar-random unitary via QR of a complex Gaussian matrix.
inline Matrix random_unitary(Eigen::Index dim, gatenet::Rng& rng) {
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            m(i, j) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const std::complex<double> d = r(k, k);
        q.col(k) *= std::abs(d) > 0 ? d / std::abs(d) : 1.0;
    }
    return q;
}

} // namespace oracles
