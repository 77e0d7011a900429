// liealg.hpp — Dynamical-Lie-algebra closure under repeated commutators and
// the membership test it supports: a static-coupling network can implement a
// gate only if the gate's generator lies in the algebra generated by the
// Hamiltonian's term operators (a necessary condition; ancilla-state-dependent
// implementations are not excluded by a failure).
//
// All algebra is done on Pauli coefficient vectors; dense matrices are never
// formed.

#pragma once

#include <string>
#include <vector>

#include "gatenet/gates.hpp"
#include "gatenet/network.hpp"
#include "gatenet/operators.hpp"

namespace gatenet {

struct AlgebraBasis {
    int num_qubits = 0;
    std::vector<HermitianOperator> elements; // orthonormal under hs_inner
    std::vector<std::string> provenance;     // generator index or commutator origin

    int dim() const { return static_cast<int>(elements.size()); }
};

// Orthonormalizes the generators (components under 1e-10 are dropped), then
// appends hermitized commutators of new x all pairs until a full pass adds
// nothing. Dimension is bounded by 4^N, so this terminates.
AlgebraBasis closure(const std::vector<HermitianOperator>& generators);

// True iff the traceless part of k lies in the span of the basis elements'
// traceless parts: residual < 1e-8 * hs_norm(k). Identity components are
// irrelevant (they only move the gate's global phase).
bool contains(const AlgebraBasis& basis, const HermitianOperator& k, double* residual_out = nullptr);

struct LieCheckReport {
    bool pass = false;
    int algebra_dim = 0;
    double residual = 0.0;      // relative residual of the target generator
    std::string branch_note;    // log-branch convention used
};

// Builds generators from every tie group of the spec, closes the algebra,
// and tests the embedded target generator gate_log(U_Q) ⊗ 1_A.
LieCheckReport necessary_condition(const NetworkSpec& spec, const GateTarget& target);

struct BottomUpStep {
    std::string group;   // group appended before this evaluation ("" = base)
    int algebra_dim = 0;
    bool pass = false;
};

struct BottomUpResult {
    NetworkSpec spec;    // base spec augmented with the accepted candidates
    bool success = false;
    std::vector<BottomUpStep> log;
};

// Greedily appends candidate term groups in order until the necessary
// condition passes or candidates run out (steps i-ii of the bottom-up
// construction; numerical training is the trainer's job).
BottomUpResult bottom_up(const NetworkSpec& base_spec, const std::vector<TermGroup>& candidates,
                         const GateTarget& target);

} // namespace gatenet
