// operators.hpp — N-qubit operator algebra: Pauli strings, Hermitian operators
// in the Pauli basis, tensor embedding, commutators, Hilbert-Schmidt geometry,
// partial trace.
//
// Basis convention used across the project: computational basis
// |q_0 q_1 ... q_{N-1}> with site 0 the MOST significant bit, so a Pauli
// string's matrix is kron(sigma_{a_0}, sigma_{a_1}, ..., sigma_{a_{N-1}}).
// Register sites always precede ancilla sites in the global ordering.

#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gatenet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c); // throws on anything but i/x/y/z (case-insensitive)

// ---------------------------------------------------------------------------
// PauliString: one tensor product of single-site Paulis.
// ---------------------------------------------------------------------------
struct PauliString {
    std::vector<Axis> axes; // axes.size() == num_qubits, site 0 first

    PauliString() = default;
    explicit PauliString(std::vector<Axis> ax) : axes(std::move(ax)) {}

    static PauliString identity(int num_qubits);
    // Single non-identity axis at `site`, identity elsewhere.
    static PauliString single(int num_qubits, int site, Axis a);
    // Two non-identity axes; sites must differ.
    static PauliString two(int num_qubits, int site_a, Axis a, int site_b, Axis b);

    int num_qubits() const { return static_cast<int>(axes.size()); }
    bool is_identity() const;
    int weight() const; // number of non-identity sites

    std::string to_string() const; // e.g. "IZXI"

    auto operator<=>(const PauliString&) const = default;
};

// Dense matrix of a Pauli string (dimension 2^N). Hermitian, unitary,
// squares to the identity.
Matrix pauli_matrix(const PauliString& p);

// P_a * P_b = i^phase_pow * P_string, phase_pow in {0,1,2,3}.
struct PauliProduct {
    PauliString string;
    int phase_pow = 0;
};
PauliProduct pauli_product(const PauliString& a, const PauliString& b);

// True iff the strings commute (they either commute or anticommute).
bool pauli_commutes(const PauliString& a, const PauliString& b);

// ---------------------------------------------------------------------------
// HermitianOperator: real coefficients over the Pauli-string basis, with the
// dense matrix materialized on demand. The Pauli representation is exact and
// cheap for algebraic work; the dense form feeds the dynamics.
// ---------------------------------------------------------------------------
class HermitianOperator {
public:
    explicit HermitianOperator(int num_qubits);

    // Extract Pauli coefficients from a dense Hermitian matrix
    // (coeff_s = Tr(P_s m) / 2^N). Rejects non-Hermitian or non 2^N input.
    static HermitianOperator from_matrix(const Matrix& m, double herm_tol = 1e-10);

    int num_qubits() const { return num_qubits_; }
    int dim() const { return 1 << num_qubits_; }

    const std::map<PauliString, double>& pauli_coeffs() const { return coeffs_; }
    double coeff(const PauliString& p) const;

    // Accumulate c * P into the operator; drops the entry if it cancels.
    HermitianOperator& add_term(const PauliString& p, double c);

    Matrix to_matrix() const;

    bool is_zero(double tol = 0.0) const;
    int max_weight() const; // largest Pauli weight present (0 for zero operator)

    HermitianOperator& operator+=(const HermitianOperator& rhs);
    HermitianOperator& operator-=(const HermitianOperator& rhs);
    HermitianOperator& operator*=(double s);
    friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
    friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
    friend HermitianOperator operator*(double s, HermitianOperator a) { return a *= s; }

private:
    int num_qubits_;
    std::map<PauliString, double> coeffs_; // only nonzero entries
};

// Normalized Hilbert-Schmidt inner product Tr(a b) / 2^N. Pauli strings are
// orthonormal under it, so this reduces to a sparse dot product.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);
double hs_norm(const HermitianOperator& a);

// Hermitized commutator i[a, b]; closed on real Pauli coefficients.
HermitianOperator comm_h(const HermitianOperator& a, const HermitianOperator& b);

// Tensor the identity onto all sites outside `sites`: local site k of `op`
// lands on global site sites[k].
HermitianOperator embed(const HermitianOperator& op, const std::vector<int>& sites,
                        int total_sites);

// Reduced matrix on `keep` (global site indices, any order given; the output
// ordering follows ascending site index). Works on any matrix of dimension
// 2^num_qubits; trace is preserved.
Matrix partial_trace(const Matrix& rho, const std::vector<int>& keep, int num_qubits);

// --------------------------- validity checks ------------------------------

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-12);
bool is_unitary(const Matrix& m, double tol = 1e-10);
bool is_density_matrix(const Matrix& m, double trace_tol = 1e-12, double eig_tol = 1e-10);

// kron with site-0-most-significant ordering: kron(A, B) acts as A on the
// leading factor.
Matrix kron(const Matrix& a, const Matrix& b);

} // namespace gatenet
