#include "gatenet/gates.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace gatenet {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix permutation_swap(Eigen::Index dim, Eigen::Index a, Eigen::Index b) {
    Matrix m = Matrix::Identity(dim, dim);
    m(a, a) = 0.0;
    m(b, b) = 0.0;
    m(a, b) = 1.0;
    m(b, a) = 1.0;
    return m;
}

// SWAP of two qubits inside an n-qubit register (site 0 most significant).
Matrix swap_sites(int num_qubits, int site_a, int site_b) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Matrix m = Matrix::Zero(dim, dim);
    const int sa = num_qubits - 1 - site_a;
    const int sb = num_qubits - 1 - site_b;
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Eigen::Index ba = (col >> sa) & 1;
        const Eigen::Index bb = (col >> sb) & 1;
        Eigen::Index row = col & ~((Eigen::Index{1} << sa) | (Eigen::Index{1} << sb));
        row |= (bb << sa) | (ba << sb);
        m(row, col) = 1.0;
    }
    return m;
}

} // namespace

int GateTarget::num_qubits() const {
    int n = 0;
    Eigen::Index d = unitary.rows();
    while (d > 1) {
        d /= 2;
        ++n;
    }
    return n;
}

GateTarget toffoli() {
    GateTarget g;
    g.name = "toffoli";
    g.unitary = permutation_swap(8, 6, 7); // |110> <-> |111>
    g.symmetries.push_back(swap_sites(3, 0, 1));
    return g;
}

GateTarget fredkin() {
    GateTarget g;
    g.name = "fredkin";
    g.unitary = permutation_swap(8, 6, 5); // |110> <-> |101>
    g.symmetries.push_back(swap_sites(3, 1, 2));
    return g;
}

GateTarget sqrt_swap() {
    GateTarget g;
    g.name = "sqrt-swap";
    Matrix m = Matrix::Identity(4, 4);
    const Complex p{0.5, 0.5};  // (1+i)/2
    const Complex q{0.5, -0.5}; // (1-i)/2
    m(1, 1) = p;
    m(1, 2) = q;
    m(2, 1) = q;
    m(2, 2) = p;
    g.unitary = m;
    return g;
}

GateTarget gate_from_json_text(const std::string& text, const std::string& name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("gate file: ") + e.what());
    }
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("gate file: expected a 2D array of [re, im] pairs");
    const Eigen::Index dim = static_cast<Eigen::Index>(j.size());
    Eigen::Index d = dim;
    while (d > 1) {
        if (d % 2 != 0) throw std::invalid_argument("gate file: dimension is not a power of 2");
        d /= 2;
    }
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw std::invalid_argument("gate file: matrix is not square");
        for (Eigen::Index c = 0; c < dim; ++c) {
            const auto& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_array() || cell.size() != 2)
                throw std::invalid_argument("gate file: each entry must be a [re, im] pair");
            m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    const double dev = max_abs(m.adjoint() * m - Matrix::Identity(dim, dim));
    if (dev >= 1e-8) {
        std::ostringstream os;
        os << "gate file: matrix is not unitary (max |U†U - I| = " << dev << ")";
        throw std::invalid_argument(os.str());
    }
    GateTarget g;
    g.name = name;
    g.unitary = std::move(m);
    return g;
}

GateTarget custom_gate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("gate file: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return gate_from_json_text(ss.str(), path);
}

GateLog gate_log(const Matrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("gate_log: matrix must be square");
    if (!is_unitary(u, 1e-8)) throw std::invalid_argument("gate_log: matrix is not unitary");
    // A unitary is normal, so its Schur form is diagonal: U = Q T Q† with
    // T_kk = e^{i theta_k}.
    Eigen::ComplexSchur<Matrix> schur(u);
    if (schur.info() != Eigen::Success) throw std::runtime_error("gate_log: Schur decomposition failed");
    const Eigen::Index d = u.rows();
    Eigen::VectorXd phases(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        double theta = std::arg(schur.matrixT()(k, k));
        // Principal branch (-pi, pi]; eigenvalue -1 lands on +pi even when
        // rounding pushes arg just below -pi + eps.
        if (theta < -M_PI + 1e-9) theta += 2.0 * M_PI;
        phases(k) = theta;
    }
    const Matrix k_dense = schur.matrixU() * phases.cast<Complex>().asDiagonal() *
                           schur.matrixU().adjoint();
    HermitianOperator generator = HermitianOperator::from_matrix(0.5 * (k_dense + k_dense.adjoint()));
    HermitianOperator traceless = generator;
    const PauliString id = PauliString::identity(generator.num_qubits());
    const double id_coeff = generator.coeff(id);
    if (id_coeff != 0.0) traceless.add_term(id, -id_coeff);
    return {std::move(generator), std::move(traceless)};
}

GateLog gate_log(const GateTarget& target) { return gate_log(target.unitary); }

} // namespace gatenet
