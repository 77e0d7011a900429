#include "gatenet/liealg.hpp"

#include <cmath>
#include <stdexcept>

namespace gatenet {

namespace {

constexpr double kIndependenceTol = 1e-10;
constexpr double kMembershipTol = 1e-8;

// Removes the projection onto every basis element (all elements have unit
// hs-norm). Returns the residual norm.
double project_out(const AlgebraBasis& basis, HermitianOperator& v) {
    for (const auto& e : basis.elements) {
        const double c = hs_inner(e, v);
        if (c != 0.0) v -= c * e;
    }
    return hs_norm(v);
}

// Appends v / ||v|| if the residual after projection is significant.
bool try_append(AlgebraBasis& basis, HermitianOperator v, std::string origin) {
    double norm = project_out(basis, v);
    if (norm < kIndependenceTol) return false;
    // One re-orthogonalization pass keeps the basis orthonormal to rounding.
    norm = project_out(basis, v *= 1.0 / norm);
    if (norm < 0.5) return false;
    basis.elements.push_back(v *= 1.0 / norm);
    basis.provenance.push_back(std::move(origin));
    return true;
}

} // namespace

AlgebraBasis closure(const std::vector<HermitianOperator>& generators) {
    if (generators.empty()) throw std::invalid_argument("closure: no generators");
    const int n = generators.front().num_qubits();
    for (const auto& g : generators)
        if (g.num_qubits() != n) throw std::invalid_argument("closure: qubit count mismatch");

    AlgebraBasis basis;
    basis.num_qubits = n;
    for (std::size_t k = 0; k < generators.size(); ++k)
        try_append(basis, generators[k], "generator " + std::to_string(k));

    // Each pass commutes the previous pass's new elements against the whole
    // basis; stop when nothing independent appears.
    std::size_t fresh_begin = 0;
    while (fresh_begin < basis.elements.size()) {
        const std::size_t fresh_end = basis.elements.size();
        for (std::size_t a = fresh_begin; a < fresh_end; ++a) {
            for (std::size_t b = 0; b < fresh_end; ++b) {
                if (b >= a) continue; // [a,b] and [b,a] span the same line
                HermitianOperator c = comm_h(basis.elements[a], basis.elements[b]);
                if (c.is_zero()) continue;
                try_append(basis, std::move(c),
                           "[" + std::to_string(a) + "," + std::to_string(b) + "]");
            }
        }
        fresh_begin = fresh_end;
    }
    return basis;
}

bool contains(const AlgebraBasis& basis, const HermitianOperator& k, double* residual_out) {
    if (basis.num_qubits != k.num_qubits())
        throw std::invalid_argument("contains: qubit count mismatch");
    const PauliString id = PauliString::identity(k.num_qubits());
    const auto strip_identity = [&](HermitianOperator op) {
        const double c = op.coeff(id);
        if (c != 0.0) op.add_term(id, -c);
        return op;
    };

    HermitianOperator v = strip_identity(k);
    const double norm = hs_norm(v);
    if (norm == 0.0) {
        if (residual_out) *residual_out = 0.0;
        return true;
    }

    // Membership is tested against the span of the elements' traceless parts.
    // Elements coming out of closure() are already identity-free (generators
    // are Hamiltonian terms and commutators cannot produce the identity), in
    // which case the stripped set is the basis itself.
    AlgebraBasis traceless;
    traceless.num_qubits = basis.num_qubits;
    for (const auto& e : basis.elements) try_append(traceless, strip_identity(e), "");
    const double residual = project_out(traceless, v) / norm;
    if (residual_out) *residual_out = residual;
    return residual < kMembershipTol;
}

LieCheckReport necessary_condition(const NetworkSpec& spec, const GateTarget& target) {
    std::vector<HermitianOperator> generators;
    generators.reserve(static_cast<std::size_t>(spec.num_groups()));
    for (int g = 0; g < spec.num_groups(); ++g) generators.push_back(term_derivative(spec, g));
    if (generators.empty()) throw std::invalid_argument("necessary_condition: spec has no terms");

    const AlgebraBasis basis = closure(generators);

    const GateLog lg = gate_log(target.unitary);
    std::vector<int> reg_sites(spec.register_sites().begin(), spec.register_sites().end());
    const HermitianOperator k = embed(lg.traceless, reg_sites, spec.num_qubits());

    LieCheckReport rep;
    rep.algebra_dim = basis.dim();
    rep.pass = contains(basis, k, &rep.residual);
    rep.branch_note = "principal log branch, eigenphases in (-pi, pi] with -1 -> +pi; "
                      "identity component discarded";
    return rep;
}

BottomUpResult bottom_up(const NetworkSpec& base_spec, const std::vector<TermGroup>& candidates,
                         const GateTarget& target) {
    BottomUpResult res{base_spec, false, {}};
    const auto evaluate = [&](const std::string& label) {
        const LieCheckReport rep = necessary_condition(res.spec, target);
        res.log.push_back({label, rep.algebra_dim, rep.pass});
        return rep.pass;
    };
    if (base_spec.num_groups() > 0 && evaluate("")) {
        res.success = true;
        return res;
    }
    for (const auto& cand : candidates) {
        res.spec = res.spec.with_group(cand);
        if (evaluate(cand.name)) {
            res.success = true;
            return res;
        }
    }
    return res;
}

} // namespace gatenet
