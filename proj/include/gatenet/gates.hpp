// gates.hpp — Target-gate library with fixed basis conventions, plus the
// principal matrix logarithm feeding the Lie-algebra checker.

#pragma once

#include <string>
#include <vector>

#include "gatenet/operators.hpp"

namespace gatenet {

struct GateTarget {
    std::string name;
    Matrix unitary;                 // on the register, basis per operators.hpp
    std::vector<Matrix> symmetries; // unitaries S with [U, S] = 0

    int num_qubits() const;
};

// CCNOT: controls on sites 0,1, target on site 2; swaps |110> and |111>.
// Declared symmetry: SWAP of the two controls.
GateTarget toffoli();

// CSWAP: control on site 0; swaps |110> and |101>. Declared symmetry: SWAP
// of the two swap targets.
GateTarget fredkin();

// sqrt(SWAP): identity on |00>,|11>; [[(1+i)/2, (1-i)/2], [(1-i)/2, (1+i)/2]]
// on span{|01>,|10>}. Squares to SWAP.
GateTarget sqrt_swap();

// Load a gate from a JSON file holding a 2D array of [re, im] pairs
// (row-major). Rejects non-unitary input (deviation >= 1e-8) with the
// measured deviation in the message.
GateTarget custom_gate(const std::string& path);
GateTarget gate_from_json_text(const std::string& text, const std::string& name);

// Hermitian K with e^{iK} = U on the principal branch: eigenphases in
// (-pi, pi], eigenvalue -1 mapped to +pi.
struct GateLog {
    HermitianOperator generator; // K
    HermitianOperator traceless; // K minus its identity component
};
GateLog gate_log(const Matrix& u);
GateLog gate_log(const GateTarget& target);

} // namespace gatenet
