#include "gatenet/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gatenet {

AncillaState AncillaState::none() {
    Vector v(1);
    v(0) = 1.0;
    return {v};
}

AncillaState AncillaState::from_angles(double eta, double xi) {
    // The literal angle form, not re-gauged: the angle gradients in the
    // fidelity module differentiate exactly this parameterization, and the
    // overall sign is irrelevant to every channel quantity.
    Vector v(2);
    v(0) = std::cos(eta);
    v(1) = std::exp(Complex(0.0, xi)) * std::sin(eta);
    return {std::move(v)};
}

AncillaState AncillaState::from_amplitudes(Vector v) {
    if (v.size() < 1) throw std::invalid_argument("AncillaState: empty amplitude vector");
    Eigen::Index d = v.size();
    while (d > 1) {
        if (d % 2 != 0) throw std::invalid_argument("AncillaState: dimension is not a power of 2");
        d /= 2;
    }
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("AncillaState: amplitudes are not unit norm");
    // Gauge: rotate so the first nonzero amplitude is real nonnegative.
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double a = std::abs(v(k));
        if (a > 1e-14) {
            v *= std::conj(v(k)) / a;
            break;
        }
    }
    return {std::move(v)};
}

int AncillaState::num_qubits() const {
    int n = 0;
    Eigen::Index d = amplitudes.size();
    while (d > 1) {
        d /= 2;
        ++n;
    }
    return n;
}

namespace {

// Canonical key for duplicate detection: (n,m,a,b) and its mirror (m,n,b,a)
// are the same physical term.
std::tuple<int, int, int, int> coupling_key(const CouplingTerm& t) {
    if (t.site_a <= t.site_b)
        return {t.site_a, t.site_b, static_cast<int>(t.axis_a), static_cast<int>(t.axis_b)};
    return {t.site_b, t.site_a, static_cast<int>(t.axis_b), static_cast<int>(t.axis_a)};
}

} // namespace

NetworkSpec::NetworkSpec(int num_qubits, std::vector<int> register_sites,
                         std::vector<int> ancilla_sites, std::vector<CouplingTerm> couplings,
                         std::vector<FieldTerm> fields, bool ancilla_state_trainable,
                         std::optional<AncillaState> fixed_ancilla_state)
    : num_qubits_(num_qubits),
      register_(std::move(register_sites)),
      ancillae_(std::move(ancilla_sites)),
      couplings_(std::move(couplings)),
      fields_(std::move(fields)),
      ancilla_trainable_(ancilla_state_trainable),
      fixed_ancilla_(AncillaState::none()) {
    if (num_qubits_ < 1) throw std::invalid_argument("NetworkSpec: num_qubits must be positive");
    if (register_.empty()) throw std::invalid_argument("NetworkSpec: register must be nonempty");

    // Global ordering convention: register sites 0..|Q|-1, ancillae after.
    for (std::size_t k = 0; k < register_.size(); ++k)
        if (register_[k] != static_cast<int>(k))
            throw std::invalid_argument("NetworkSpec: register sites must be 0..|Q|-1 in order");
    for (std::size_t k = 0; k < ancillae_.size(); ++k)
        if (ancillae_[k] != static_cast<int>(register_.size() + k))
            throw std::invalid_argument("NetworkSpec: ancilla sites must follow the register in order");
    if (static_cast<int>(register_.size() + ancillae_.size()) != num_qubits_)
        throw std::invalid_argument("NetworkSpec: register + ancillae must cover all qubits");

    std::set<std::tuple<int, int, int, int>> seen;
    for (const auto& t : couplings_) {
        if (t.site_a < 0 || t.site_a >= num_qubits_ || t.site_b < 0 || t.site_b >= num_qubits_)
            throw std::out_of_range("NetworkSpec: coupling site out of range");
        if (t.site_a == t.site_b)
            throw std::invalid_argument("NetworkSpec: coupling sites must differ");
        if (t.axis_a == Axis::I || t.axis_b == Axis::I)
            throw std::invalid_argument("NetworkSpec: coupling axes must be X, Y or Z");
        if (t.group.empty()) throw std::invalid_argument("NetworkSpec: coupling without tie group");
        if (!std::isfinite(t.mult)) throw std::invalid_argument("NetworkSpec: non-finite multiplier");
        if (!seen.insert(coupling_key(t)).second)
            throw std::invalid_argument("NetworkSpec: duplicate coupling term (or its mirror)");
    }
    std::set<std::pair<int, int>> seen_fields;
    for (const auto& t : fields_) {
        if (t.site < 0 || t.site >= num_qubits_)
            throw std::out_of_range("NetworkSpec: field site out of range");
        if (t.axis == Axis::I)
            throw std::invalid_argument("NetworkSpec: field axis must be X, Y or Z");
        if (t.group.empty()) throw std::invalid_argument("NetworkSpec: field without tie group");
        if (!std::isfinite(t.mult)) throw std::invalid_argument("NetworkSpec: non-finite multiplier");
        if (!seen_fields.insert({t.site, static_cast<int>(t.axis)}).second)
            throw std::invalid_argument("NetworkSpec: duplicate field term");
    }

    // Tie-group order: first appearance, couplings before fields.
    for (const auto& t : couplings_)
        if (std::find(groups_.begin(), groups_.end(), t.group) == groups_.end())
            groups_.push_back(t.group);
    for (const auto& t : fields_)
        if (std::find(groups_.begin(), groups_.end(), t.group) == groups_.end())
            groups_.push_back(t.group);

    if (fixed_ancilla_state) {
        if (ancilla_trainable_)
            throw std::invalid_argument("NetworkSpec: fixed ancilla state with trainable flag");
        fixed_ancilla_ = std::move(*fixed_ancilla_state);
    }
    if (ancilla_trainable_ && ancillae_.size() != 1)
        throw std::invalid_argument("NetworkSpec: trainable (eta, xi) state needs exactly one ancilla");
    const Eigen::Index want = Eigen::Index{1} << ancillae_.size();
    if (!ancilla_trainable_ && fixed_ancilla_.amplitudes.size() != want) {
        if (fixed_ancilla_state)
            throw std::invalid_argument("NetworkSpec: ancilla state dimension mismatch");
        Vector v = Vector::Zero(want);
        v(0) = 1.0;
        fixed_ancilla_ = AncillaState{v};
    }
}

int NetworkSpec::group_index(const std::string& name) const {
    const auto it = std::find(groups_.begin(), groups_.end(), name);
    if (it == groups_.end())
        throw std::invalid_argument("NetworkSpec: unknown tie group '" + name + "'");
    return static_cast<int>(it - groups_.begin());
}

int NetworkSpec::num_parameters() const {
    return num_groups() + (ancilla_trainable_ ? 2 : 0);
}

NetworkSpec NetworkSpec::with_group(const TermGroup& g) const {
    auto couplings = couplings_;
    auto fields = fields_;
    for (auto t : g.couplings) {
        t.group = g.name;
        couplings.push_back(t);
    }
    for (auto t : g.fields) {
        t.group = g.name;
        fields.push_back(t);
    }
    return NetworkSpec(num_qubits_, register_, ancillae_, std::move(couplings), std::move(fields),
                       ancilla_trainable_,
                       ancilla_trainable_ ? std::nullopt : std::optional<AncillaState>(fixed_ancilla_));
}

NetworkSpec NetworkSpec::without_group(const std::string& name) const {
    group_index(name); // throws on unknown group
    std::vector<CouplingTerm> couplings;
    std::vector<FieldTerm> fields;
    for (const auto& t : couplings_)
        if (t.group != name) couplings.push_back(t);
    for (const auto& t : fields_)
        if (t.group != name) fields.push_back(t);
    return NetworkSpec(num_qubits_, register_, ancillae_, std::move(couplings), std::move(fields),
                       ancilla_trainable_,
                       ancilla_trainable_ ? std::nullopt : std::optional<AncillaState>(fixed_ancilla_));
}

double ParameterVector::eta(const NetworkSpec& spec) const {
    if (!spec.ancilla_state_trainable())
        throw std::logic_error("ParameterVector::eta: ancilla state is not trainable");
    return values[values.size() - 2];
}

double ParameterVector::xi(const NetworkSpec& spec) const {
    if (!spec.ancilla_state_trainable())
        throw std::logic_error("ParameterVector::xi: ancilla state is not trainable");
    return values[values.size() - 1];
}

std::vector<double> ParameterVector::group_values(const NetworkSpec& spec) const {
    return {values.begin(), values.begin() + spec.num_groups()};
}

void validate_parameters(const NetworkSpec& spec, const ParameterVector& lambda) {
    if (static_cast<int>(lambda.values.size()) != spec.num_parameters())
        throw std::invalid_argument("parameter vector length does not match spec");
    for (double v : lambda.values)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite parameter value");
}

AncillaState resolve_ancilla(const NetworkSpec& spec, const ParameterVector& lambda) {
    if (!spec.ancilla_state_trainable()) return spec.fixed_ancilla_state();
    validate_parameters(spec, lambda);
    return AncillaState::from_angles(lambda.eta(spec), lambda.xi(spec));
}

HermitianOperator assemble_hamiltonian(const NetworkSpec& spec, const ParameterVector& lambda) {
    validate_parameters(spec, lambda);
    HermitianOperator h(spec.num_qubits());
    for (const auto& t : spec.couplings()) {
        const double j = lambda.values[static_cast<std::size_t>(spec.group_index(t.group))];
        h.add_term(PauliString::two(spec.num_qubits(), t.site_a, t.axis_a, t.site_b, t.axis_b),
                   j * t.mult / 4.0);
    }
    for (const auto& t : spec.fields()) {
        const double f = lambda.values[static_cast<std::size_t>(spec.group_index(t.group))];
        h.add_term(PauliString::single(spec.num_qubits(), t.site, t.axis), f * t.mult / 2.0);
    }
    return h;
}

HermitianOperator term_derivative(const NetworkSpec& spec, int group_index) {
    if (group_index < 0 || group_index >= spec.num_groups())
        throw std::out_of_range("term_derivative: group index out of range");
    const std::string& name = spec.groups()[static_cast<std::size_t>(group_index)];
    HermitianOperator d(spec.num_qubits());
    for (const auto& t : spec.couplings())
        if (t.group == name)
            d.add_term(PauliString::two(spec.num_qubits(), t.site_a, t.axis_a, t.site_b, t.axis_b),
                       t.mult / 4.0);
    for (const auto& t : spec.fields())
        if (t.group == name)
            d.add_term(PauliString::single(spec.num_qubits(), t.site, t.axis), t.mult / 2.0);
    return d;
}

HermitianOperator term_derivative(const NetworkSpec& spec, const std::string& group) {
    return term_derivative(spec, spec.group_index(group));
}

bool check_symmetry(const NetworkSpec& spec, const Matrix& s_register, double tol) {
    const Eigen::Index dq = spec.register_dim();
    if (s_register.rows() != dq || s_register.cols() != dq)
        throw std::invalid_argument("check_symmetry: S must act on the register");
    const Matrix s_full = kron(s_register, Matrix::Identity(spec.ancilla_dim(), spec.ancilla_dim()));
    for (int g = 0; g < spec.num_groups(); ++g) {
        const Matrix og = term_derivative(spec, g).to_matrix();
        if (max_abs(s_full * og - og * s_full) >= tol) return false;
    }
    return true;
}

std::vector<double> to_physical_units(const std::vector<double>& values, double gate_time_seconds) {
    if (!(gate_time_seconds > 0.0))
        throw std::invalid_argument("to_physical_units: gate time must be positive");
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(v / (gate_time_seconds * 1e6));
    return out;
}

} // namespace gatenet
