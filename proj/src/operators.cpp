#include "gatenet/operators.hpp"

#include <cctype>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace gatenet {

namespace {

constexpr Complex kI{0.0, 1.0};

// Single-site Pauli entries: column b maps to row `flip(b)` with `phase(b)`.
// sigma_x: |b> -> |1-b>;  sigma_y: |0> -> i|1>, |1> -> -i|0>;  sigma_z: (-1)^b.
struct SiteAction {
    int row;
    Complex amp;
};

SiteAction site_action(Axis a, int bit) {
    switch (a) {
    case Axis::I: return {bit, 1.0};
    case Axis::X: return {1 - bit, 1.0};
    case Axis::Y: return {1 - bit, bit == 0 ? kI : -kI};
    case Axis::Z: return {bit, bit == 0 ? Complex{1.0} : Complex{-1.0}};
    }
    throw std::logic_error("site_action: bad axis");
}

// Product table for single-site Paulis: a*b = i^pow * axis.
// Encodes sigma_x sigma_y = i sigma_z and cyclic permutations.
struct SiteProduct {
    Axis axis;
    int phase_pow; // exponent of i, mod 4
};

SiteProduct site_product(Axis a, Axis b) {
    if (a == Axis::I) return {b, 0};
    if (b == Axis::I) return {a, 0};
    if (a == b) return {Axis::I, 0};
    const int ia = static_cast<int>(a); // X=1, Y=2, Z=3
    const int ib = static_cast<int>(b);
    // Cyclic (X,Y)->Z etc. get +i; anticyclic get -i (i.e. i^3).
    const bool cyclic = (ib - ia + 3) % 3 == 1;
    const Axis c = static_cast<Axis>(6 - ia - ib);
    return {c, cyclic ? 1 : 3};
}

int power_of_two_qubits(Eigen::Index dim) {
    if (dim < 1) throw std::invalid_argument("matrix dimension must be positive");
    int n = 0;
    Eigen::Index d = dim;
    while (d > 1) {
        if (d % 2 != 0) throw std::invalid_argument("matrix dimension is not a power of 2");
        d /= 2;
        ++n;
    }
    return n;
}

} // namespace

char axis_char(Axis a) {
    switch (a) {
    case Axis::I: return 'I';
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
    }
    throw std::logic_error("axis_char: bad axis");
}

Axis axis_from_char(char c) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'i': return Axis::I;
    case 'x': return Axis::X;
    case 'y': return Axis::Y;
    case 'z': return Axis::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli axis '") + c + "'");
    }
}

PauliString PauliString::identity(int num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("PauliString: num_qubits must be positive");
    return PauliString(std::vector<Axis>(static_cast<std::size_t>(num_qubits), Axis::I));
}

PauliString PauliString::single(int num_qubits, int site, Axis a) {
    PauliString p = identity(num_qubits);
    if (site < 0 || site >= num_qubits) throw std::out_of_range("PauliString::single: site out of range");
    p.axes[static_cast<std::size_t>(site)] = a;
    return p;
}

PauliString PauliString::two(int num_qubits, int site_a, Axis a, int site_b, Axis b) {
    if (site_a == site_b) throw std::invalid_argument("PauliString::two: sites must differ");
    PauliString p = single(num_qubits, site_a, a);
    if (site_b < 0 || site_b >= num_qubits) throw std::out_of_range("PauliString::two: site out of range");
    p.axes[static_cast<std::size_t>(site_b)] = b;
    return p;
}

bool PauliString::is_identity() const {
    for (Axis a : axes)
        if (a != Axis::I) return false;
    return true;
}

int PauliString::weight() const {
    int w = 0;
    for (Axis a : axes)
        if (a != Axis::I) ++w;
    return w;
}

std::string PauliString::to_string() const {
    std::string s;
    s.reserve(axes.size());
    for (Axis a : axes) s.push_back(axis_char(a));
    return s;
}

Matrix pauli_matrix(const PauliString& p) {
    const int n = p.num_qubits();
    if (n < 1) throw std::invalid_argument("pauli_matrix: empty Pauli string");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix m = Matrix::Zero(dim, dim);
    // Each column has exactly one nonzero entry; walk sites MSB-first.
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::Index row = 0;
        Complex amp = 1.0;
        for (int site = 0; site < n; ++site) {
            const int bit = static_cast<int>((col >> (n - 1 - site)) & 1);
            const SiteAction act = site_action(p.axes[static_cast<std::size_t>(site)], bit);
            row = (row << 1) | static_cast<Eigen::Index>(act.row);
            amp *= act.amp;
        }
        m(row, col) = amp;
    }
    return m;
}

PauliProduct pauli_product(const PauliString& a, const PauliString& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("pauli_product: qubit count mismatch");
    PauliString out = a;
    int pow = 0;
    for (std::size_t k = 0; k < a.axes.size(); ++k) {
        const SiteProduct sp = site_product(a.axes[k], b.axes[k]);
        out.axes[k] = sp.axis;
        pow += sp.phase_pow;
    }
    return {std::move(out), pow % 4};
}

bool pauli_commutes(const PauliString& a, const PauliString& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("pauli_commutes: qubit count mismatch");
    // Strings anticommute iff an odd number of sites hold distinct
    // non-identity axes.
    int clashes = 0;
    for (std::size_t k = 0; k < a.axes.size(); ++k) {
        if (a.axes[k] != Axis::I && b.axes[k] != Axis::I && a.axes[k] != b.axes[k]) ++clashes;
    }
    return clashes % 2 == 0;
}

HermitianOperator::HermitianOperator(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("HermitianOperator: num_qubits must be positive");
}

HermitianOperator HermitianOperator::from_matrix(const Matrix& m, double herm_tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("from_matrix: matrix must be square");
    if (!is_hermitian(m, herm_tol)) throw std::invalid_argument("from_matrix: matrix is not Hermitian");
    const int n = power_of_two_qubits(m.rows());
    HermitianOperator op(n);
    const double norm = 1.0 / static_cast<double>(m.rows());
    // coeff_s = Tr(P_s m) / 2^N; P_s has one entry per row, so the trace is a
    // single sweep.
    std::vector<Axis> axes(static_cast<std::size_t>(n), Axis::I);
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (int site = n - 1; site >= 0; --site) {
            axes[static_cast<std::size_t>(site)] = static_cast<Axis>(c & 3);
            c >>= 2;
        }
        PauliString p{axes};
        Complex tr = 0.0;
        for (Eigen::Index col = 0; col < m.rows(); ++col) {
            Eigen::Index row = 0;
            Complex amp = 1.0;
            for (int site = 0; site < n; ++site) {
                const int bit = static_cast<int>((col >> (n - 1 - site)) & 1);
                const SiteAction act = site_action(p.axes[static_cast<std::size_t>(site)], bit);
                row = (row << 1) | static_cast<Eigen::Index>(act.row);
                amp *= act.amp;
            }
            tr += amp * m(col, row); // Tr(P m) picks m(col, row) against P(row, col)
        }
        const double coeff = (tr * norm).real();
        if (coeff != 0.0) op.add_term(p, coeff);
    }
    return op;
}

double HermitianOperator::coeff(const PauliString& p) const {
    const auto it = coeffs_.find(p);
    return it == coeffs_.end() ? 0.0 : it->second;
}

HermitianOperator& HermitianOperator::add_term(const PauliString& p, double c) {
    if (p.num_qubits() != num_qubits_)
        throw std::invalid_argument("add_term: qubit count mismatch");
    if (c == 0.0) return *this;
    const auto [it, inserted] = coeffs_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) coeffs_.erase(it);
    }
    return *this;
}

Matrix HermitianOperator::to_matrix() const {
    const Eigen::Index d = dim();
    Matrix m = Matrix::Zero(d, d);
    for (const auto& [p, c] : coeffs_) m += c * pauli_matrix(p);
    return m;
}

bool HermitianOperator::is_zero(double tol) const {
    for (const auto& [p, c] : coeffs_)
        if (std::abs(c) > tol) return false;
    return true;
}

int HermitianOperator::max_weight() const {
    int w = 0;
    for (const auto& [p, c] : coeffs_) w = std::max(w, p.weight());
    return w;
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& rhs) {
    if (rhs.num_qubits_ != num_qubits_) throw std::invalid_argument("operator+=: qubit count mismatch");
    for (const auto& [p, c] : rhs.coeffs_) add_term(p, c);
    return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& rhs) {
    if (rhs.num_qubits_ != num_qubits_) throw std::invalid_argument("operator-=: qubit count mismatch");
    for (const auto& [p, c] : rhs.coeffs_) add_term(p, -c);
    return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s) {
    if (s == 0.0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [p, c] : coeffs_) c *= s;
    return *this;
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("hs_inner: qubit count mismatch");
    // Orthonormality of Pauli strings turns Tr(ab)/2^N into a dot product.
    const auto& ca = a.pauli_coeffs();
    const auto& cb = b.pauli_coeffs();
    const auto& small = ca.size() <= cb.size() ? ca : cb;
    const auto& large = ca.size() <= cb.size() ? cb : ca;
    double sum = 0.0;
    for (const auto& [p, c] : small) {
        const auto it = large.find(p);
        if (it != large.end()) sum += c * it->second;
    }
    return sum;
}

double hs_norm(const HermitianOperator& a) { return std::sqrt(hs_inner(a, a)); }

HermitianOperator comm_h(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("comm_h: qubit count mismatch");
    HermitianOperator out(a.num_qubits());
    // i[P_s, P_t] = 0 when the strings commute; otherwise 2 i^{k+1} P_{st}
    // with i^{k+1} = +/-1, so real coefficients stay real.
    for (const auto& [ps, cs] : a.pauli_coeffs()) {
        for (const auto& [pt, ct] : b.pauli_coeffs()) {
            if (pauli_commutes(ps, pt)) continue;
            PauliProduct prod = pauli_product(ps, pt);
            const int pow = (prod.phase_pow + 1) % 4;
            const double sign = pow == 0 ? 1.0 : -1.0; // pow is 0 or 2 here
            out.add_term(prod.string, 2.0 * sign * cs * ct);
        }
    }
    return out;
}

HermitianOperator embed(const HermitianOperator& op, const std::vector<int>& sites,
                        int total_sites) {
    if (static_cast<int>(sites.size()) != op.num_qubits())
        throw std::invalid_argument("embed: site list must match operator size");
    std::vector<bool> used(static_cast<std::size_t>(total_sites), false);
    for (int s : sites) {
        if (s < 0 || s >= total_sites) throw std::out_of_range("embed: site out of range");
        if (used[static_cast<std::size_t>(s)]) throw std::invalid_argument("embed: duplicate site");
        used[static_cast<std::size_t>(s)] = true;
    }
    HermitianOperator out(total_sites);
    for (const auto& [p, c] : op.pauli_coeffs()) {
        PauliString q = PauliString::identity(total_sites);
        for (std::size_t k = 0; k < sites.size(); ++k)
            q.axes[static_cast<std::size_t>(sites[k])] = p.axes[k];
        out.add_term(q, c);
    }
    return out;
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& keep, int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("partial_trace: matrix does not match qubit count");
    std::vector<bool> kept(static_cast<std::size_t>(num_qubits), false);
    for (int s : keep) {
        if (s < 0 || s >= num_qubits) throw std::out_of_range("partial_trace: site out of range");
        if (kept[static_cast<std::size_t>(s)]) throw std::invalid_argument("partial_trace: duplicate site");
        kept[static_cast<std::size_t>(s)] = true;
    }
    // Output ordering: kept sites ascending; bit position of site s is
    // (num_qubits - 1 - s) from the MSB-first convention.
    std::vector<int> keep_shift, trace_shift;
    for (int s = 0; s < num_qubits; ++s) {
        (kept[static_cast<std::size_t>(s)] ? keep_shift : trace_shift).push_back(num_qubits - 1 - s);
    }
    const Eigen::Index dk = Eigen::Index{1} << keep_shift.size();
    const Eigen::Index dt = Eigen::Index{1} << trace_shift.size();

    const auto scatter = [](Eigen::Index bits, const std::vector<int>& shifts) {
        Eigen::Index out = 0;
        for (std::size_t k = 0; k < shifts.size(); ++k) {
            const Eigen::Index bit = (bits >> (shifts.size() - 1 - k)) & 1;
            out |= bit << shifts[k];
        }
        return out;
    };

    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i) {
        const Eigen::Index gi = scatter(i, keep_shift);
        for (Eigen::Index j = 0; j < dk; ++j) {
            const Eigen::Index gj = scatter(j, keep_shift);
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                const Eigen::Index gt = scatter(t, trace_shift);
                sum += rho(gi | gt, gj | gt);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) < tol;
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) < tol;
}

bool is_density_matrix(const Matrix& m, double trace_tol, double eig_tol) {
    if (!is_hermitian(m, trace_tol)) return false;
    if (std::abs(m.trace().real() - 1.0) > trace_tol || std::abs(m.trace().imag()) > trace_tol)
        return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    if (es.info() != Eigen::Success) return false;
    return es.eigenvalues().minCoeff() >= -eig_tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace gatenet
