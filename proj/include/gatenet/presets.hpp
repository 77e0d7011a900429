// presets.hpp — Bundled network configurations with their optimized
// parameters and targets: the four-qubit Toffoli and Fredkin networks and the
// Heisenberg remote sqrt(SWAP) family. Site indices are zero-based; group
// names keep the one-based qubit labels used in the literature (J_zz_12
// couples qubits 1 and 2, i.e. sites 0 and 1).

#pragma once

#include <string>
#include <vector>

#include "gatenet/fidelity.hpp"
#include "gatenet/network.hpp"

namespace gatenet {

struct Preset {
    std::string name;
    NetworkSpec spec;
    ParameterVector lambda;
    GateTarget target;
    double expected_fbar = 0.0;

    AncillaState ancilla() const { return resolve_ancilla(spec, lambda); }
};

// Four-qubit CCNOT network: ZZ couplings among all pairs of {controls,
// target, ancilla} with the control qubits tied pairwise, one XX coupling
// between target and ancilla, X/Z fields, trainable ancilla angles. Average
// fidelity 0.9998.
Preset toffoli_preset();

// Same network and optimum with every physical coupling and field its own
// free parameter (independent-drift robustness studies).
Preset toffoli_untied_preset();

// The fully connected XX/ZZ ansatz (control qubits tied) that training
// starts from; contains the optimized network as the point where the extra
// groups vanish.
NetworkSpec toffoli_training_spec();

// Generic untrained 4-qubit network: every two-body axis pair and every
// local field its own parameter. Random draws from it realize the 1/D
// average-fidelity floor of unoptimized evolution.
NetworkSpec untrained_network_spec();

// Four-qubit CSWAP network: XX+ZZ couplings, fixed ancilla; the propagator
// factorizes as CSWAP ⊗ (single-qubit unitary), so the gate is exact and
// ancilla-independent.
Preset fredkin_preset();

// Heisenberg network implementing sqrt(SWAP) between two uncoupled qubits
// through a two-qubit singlet bridge. The analytic family is
//   J12 = J24 = alpha + pi sqrt((2n)^2 - 1) / sqrt(8),
//   J13 = J34 = alpha - pi sqrt((2n)^2 - 1) / sqrt(8),
//   J23 = alpha + (-1)^n pi,
// with exact fidelity for every integer n >= 1 and any alpha.
Preset remote_sqswap_preset(int n = 1, double alpha = 0.0);

// Same network with every edge its own free parameter (for robustness
// studies that perturb physical couplings independently).
Preset remote_sqswap_untied_preset(int n = 1, double alpha = 0.0);

// Two-qubit direct implementation: a single Heisenberg coupling J = pi/2.
Preset direct_sqswap_preset();

// Lookup by CLI name: toffoli | toffoli-untied | fredkin | remote-sqswap |
// remote-sqswap-untied | direct-sqswap.
Preset get_preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace gatenet
