// network.hpp — Qubit-network declaration (graph, allowed interaction types,
// register/ancilla split, parameter ties) and Hamiltonian assembly
//
//   H = sum_{(n,m)} J^{ab}_{nm} sigma_n^a sigma_m^b / 4
//     + sum_n      h^a_n       sigma_n^a / 2
//
// from a free-parameter vector. Terms tied into one group share a single
// free parameter, each member scaled by its multiplier; ties encode target
// symmetries (including cross-type ties like h^z_3 = J^zz_13).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatenet/operators.hpp"

namespace gatenet {

struct CouplingTerm {
    int site_a = 0;
    int site_b = 0;
    Axis axis_a = Axis::Z;
    Axis axis_b = Axis::Z;
    std::string group;
    double mult = 1.0;
};

struct FieldTerm {
    int site = 0;
    Axis axis = Axis::Z;
    std::string group;
    double mult = 1.0;
};

// Pure state of the ancilla block. Unit norm; amplitude-specified states are
// gauged so the first nonzero amplitude is real nonnegative, while the
// single-ancilla angle form cos(eta)|0> + e^{i xi} sin(eta)|1> is kept
// verbatim (its own canonical representative, and the form the trainable
// angle gradients differentiate).
struct AncillaState {
    Vector amplitudes; // dimension 2^{|A|}; dimension 1 when there is no ancilla

    static AncillaState none(); // |A| = 0
    static AncillaState from_angles(double eta, double xi);
    // Validates unit norm (1e-12) and applies the phase gauge.
    static AncillaState from_amplitudes(Vector v);

    int num_qubits() const;
};

// Named set of terms sharing one free parameter; the unit liealg/bottom-up
// work with when growing a spec.
struct TermGroup {
    std::string name;
    std::vector<CouplingTerm> couplings;
    std::vector<FieldTerm> fields;
};

class NetworkSpec {
public:
    // Register sites must be 0..|Q|-1 and ancillae |Q|..N-1 (the global
    // ordering convention); couplings need distinct sites and no duplicate
    // (n,m,a,b) or mirrored (m,n,b,a) entries.
    NetworkSpec(int num_qubits, std::vector<int> register_sites, std::vector<int> ancilla_sites,
                std::vector<CouplingTerm> couplings, std::vector<FieldTerm> fields,
                bool ancilla_state_trainable = false,
                std::optional<AncillaState> fixed_ancilla_state = std::nullopt);

    int num_qubits() const { return num_qubits_; }
    const std::vector<int>& register_sites() const { return register_; }
    const std::vector<int>& ancilla_sites() const { return ancillae_; }
    int register_dim() const { return 1 << register_.size(); }
    int ancilla_dim() const { return 1 << ancillae_.size(); }

    const std::vector<CouplingTerm>& couplings() const { return couplings_; }
    const std::vector<FieldTerm>& fields() const { return fields_; }

    // Tie groups in first-appearance order; ParameterVector entries align
    // with this ordering.
    const std::vector<std::string>& groups() const { return groups_; }
    int num_groups() const { return static_cast<int>(groups_.size()); }
    int group_index(const std::string& name) const; // throws on unknown group

    bool ancilla_state_trainable() const { return ancilla_trainable_; }
    // Fixed ancilla state (default |0...0>) when not trainable.
    const AncillaState& fixed_ancilla_state() const { return fixed_ancilla_; }

    // Number of free parameters: groups (+2 when the ancilla state trains).
    int num_parameters() const;

    // Copy with one more tie group appended (bottom-up construction).
    NetworkSpec with_group(const TermGroup& g) const;
    // Copy with a group (and its terms) removed.
    NetworkSpec without_group(const std::string& name) const;

private:
    int num_qubits_;
    std::vector<int> register_;
    std::vector<int> ancillae_;
    std::vector<CouplingTerm> couplings_;
    std::vector<FieldTerm> fields_;
    std::vector<std::string> groups_;
    bool ancilla_trainable_ = false;
    AncillaState fixed_ancilla_;
};

// The free parameters: one value per tie group, plus trailing (eta, xi)
// when the ancilla state is trainable.
struct ParameterVector {
    std::vector<double> values;

    double eta(const NetworkSpec& spec) const;
    double xi(const NetworkSpec& spec) const;
    // Values restricted to the Hamiltonian tie groups.
    std::vector<double> group_values(const NetworkSpec& spec) const;
};

// Checks length and finiteness of lambda against spec.
void validate_parameters(const NetworkSpec& spec, const ParameterVector& lambda);

// The ancilla state the channel uses: angles from lambda when trainable,
// the spec's fixed state otherwise.
AncillaState resolve_ancilla(const NetworkSpec& spec, const ParameterVector& lambda);

// H(lambda) = sum_g lambda_g * term_derivative(g). Couplings carry 1/4,
// fields 1/2.
HermitianOperator assemble_hamiltonian(const NetworkSpec& spec, const ParameterVector& lambda);

// dH/dlambda_g: the group's terms with their multipliers and 1/4 / 1/2
// factors.
HermitianOperator term_derivative(const NetworkSpec& spec, int group_index);
HermitianOperator term_derivative(const NetworkSpec& spec, const std::string& group);

// True iff S (on the register) embedded as S ⊗ 1_A commutes with every tie
// group's term operator, i.e. [H(lambda), S⊗1] = 0 for all lambda.
bool check_symmetry(const NetworkSpec& spec, const Matrix& s_register, double tol = 1e-10);

// Dimensionless value -> MHz at the given gate time: value / (t * 1e6).
std::vector<double> to_physical_units(const std::vector<double>& values, double gate_time_seconds);

} // namespace gatenet
