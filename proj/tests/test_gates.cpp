#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "gatenet/gates.hpp"
#include "gatenet/rng.hpp"
#include "oracles.hpp"

using namespace gatenet;

namespace {

Vector basis_ket(int dim, int k) {
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return v;
}

} // namespace

TEST_SUITE_BEGIN("gates");

TEST_CASE("toffoli permutes |110> and |111> only") {
    GateTarget g = toffoli();
    CHECK(max_abs(g.unitary * basis_ket(8, 6) - basis_ket(8, 7)) < 1e-15);
    CHECK(max_abs(g.unitary * basis_ket(8, 7) - basis_ket(8, 6)) < 1e-15);
    CHECK(max_abs(g.unitary * basis_ket(8, 5) - basis_ket(8, 5)) < 1e-15); // |101>
    CHECK(max_abs(g.unitary * g.unitary - Matrix::Identity(8, 8)) < 1e-15);
}

TEST_CASE("fredkin swaps |110> and |101>") {
    GateTarget g = fredkin();
    CHECK(max_abs(g.unitary * basis_ket(8, 6) - basis_ket(8, 5)) < 1e-15);
    CHECK(max_abs(g.unitary * basis_ket(8, 3) - basis_ket(8, 3)) < 1e-15); // |011>
    CHECK(max_abs(g.unitary * g.unitary - Matrix::Identity(8, 8)) < 1e-15);
}

TEST_CASE("sqrt_swap squares to SWAP") {
    GateTarget g = sqrt_swap();
    Matrix swap = Matrix::Identity(4, 4);
    swap(1, 1) = swap(2, 2) = 0.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    CHECK(max_abs(g.unitary * g.unitary - swap) < 1e-15);
    CHECK(max_abs(g.unitary * basis_ket(4, 0) - basis_ket(4, 0)) < 1e-15);
    CHECK(g.unitary(1, 1) == Complex(0.5, 0.5));
}

TEST_CASE("library gates are unitary and commute with their declared symmetries") {
    for (const GateTarget& g : {toffoli(), fredkin(), sqrt_swap()}) {
        CHECK(is_unitary(g.unitary));
        for (const Matrix& s : g.symmetries)
            CHECK(max_abs(g.unitary * s - s * g.unitary) < 1e-10);
    }
}

TEST_CASE("custom_gate accepts unitaries and rejects the rest") {
    CHECK(gate_from_json_text("[[[1,0],[0,0]],[[0,0],[1,0]]]", "id").unitary ==
          Matrix::Identity(2, 2));

    const double s = 1.0 / std::sqrt(2.0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "[[[%.17g,0],[%.17g,0]],[[%.17g,0],[%.17g,0]]]", s, s, s, -s);
    GateTarget had = gate_from_json_text(buf, "hadamard");
    CHECK(is_unitary(had.unitary));

    // a row scaled by 1.01 is not unitary
    std::snprintf(buf, sizeof buf, "[[[%.17g,0],[%.17g,0]],[[%.17g,0],[%.17g,0]]]", 1.01 * s,
                  1.01 * s, s, -s);
    CHECK_THROWS_WITH_AS(gate_from_json_text(buf, "bad"),
                         doctest::Contains("not unitary"), std::invalid_argument);

    CHECK_THROWS_AS(gate_from_json_text("[[[1,0],[0,0]]]", "rect"), std::invalid_argument);
    CHECK_THROWS_AS(gate_from_json_text("not json", "junk"), std::invalid_argument);
    CHECK_THROWS_AS(custom_gate("/nonexistent/gate.json"), std::invalid_argument);
}

TEST_CASE("custom_gate reads a file") {
    const std::string path = "test_gate_tmp.json";
    {
        std::ofstream out(path);
        out << "[[[0,0],[1,0]],[[1,0],[0,0]]]"; // Pauli X
    }
    GateTarget g = custom_gate(path);
    CHECK(max_abs(g.unitary - pauli_matrix(PauliString::single(1, 0, Axis::X))) < 1e-15);
    std::remove(path.c_str());
}

TEST_CASE("gate_log principal branch") {
    // identity -> 0
    CHECK(gate_log(Matrix::Identity(4, 4)).generator.is_zero(1e-12));

    // X -> pi (I - X) / 2: phases {0, pi} with -1 mapped to +pi
    Matrix x = pauli_matrix(PauliString::single(1, 0, Axis::X));
    HermitianOperator k = gate_log(x).generator;
    Matrix expect = M_PI * 0.5 * (Matrix::Identity(2, 2) - x);
    CHECK(max_abs(k.to_matrix() - expect) < 1e-9);

    // CCNOT -> pi P with P the projector onto |11> x |->
    Vector v = Vector::Zero(8);
    v(6) = 1.0 / std::sqrt(2.0);
    v(7) = -1.0 / std::sqrt(2.0);
    Matrix p = v * v.adjoint();
    CHECK(max_abs(gate_log(toffoli()).generator.to_matrix() - M_PI * p) < 1e-9);
}

TEST_CASE("exp(i gate_log(U)) reconstructs U") {
    const auto check_reconstruct = [](const Matrix& u) {
        const Matrix k = gate_log(u).generator.to_matrix();
        Eigen::SelfAdjointEigenSolver<Matrix> es(k);
        Vector phases(u.rows());
        for (Eigen::Index i = 0; i < u.rows(); ++i)
            phases(i) = std::exp(Complex(0, es.eigenvalues()(i)));
        const Matrix rebuilt =
            es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        CHECK(max_abs(rebuilt - u) < 1e-9);
    };
    check_reconstruct(toffoli().unitary);
    check_reconstruct(fredkin().unitary);
    check_reconstruct(sqrt_swap().unitary);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) check_reconstruct(oracles::random_unitary(8, rng));
}

TEST_CASE("gate_log separates the traceless part") {
    GateLog lg = gate_log(toffoli());
    const PauliString id = PauliString::identity(3);
    CHECK(lg.traceless.coeff(id) == 0.0);
    // generator = traceless + (id coefficient) * I
    HermitianOperator diff = lg.generator;
    diff -= lg.traceless;
    CHECK(diff.pauli_coeffs().size() == 1);
    CHECK(diff.coeff(id) == doctest::Approx(M_PI / 8.0)); // Tr(pi P)/8
}

TEST_SUITE_END();
