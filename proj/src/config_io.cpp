#include "gatenet/config_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <stdexcept>

namespace gatenet {

namespace {

void require_keys(const Json& j, const std::string& ctx,
                  std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw std::invalid_argument(ctx + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return key == a; }) == allowed.end())
            throw std::invalid_argument(ctx + ": unknown key '" + key + "'");
    }
}

double get_num(const Json& j, const std::string& ctx) {
    if (!j.is_number()) throw std::invalid_argument(ctx + ": expected a number");
    return j.get<double>();
}

int get_int(const Json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw std::invalid_argument(ctx + ": expected an integer");
    return j.get<int>();
}

// Shortest decimal form that parses back to the same double.
std::string csv_num(double v) {
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

Vector amplitudes_from_json(const Json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument(ctx + ": expected [re, im] pairs");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& cell = j[k];
        if (!cell.is_array() || cell.size() != 2)
            throw std::invalid_argument(ctx + ": each amplitude must be a [re, im] pair");
        v(static_cast<Eigen::Index>(k)) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
    return v;
}

} // namespace

Json network_to_json(const NetworkSpec& spec) {
    Json j;
    j["num_qubits"] = spec.num_qubits();
    j["register"] = spec.register_sites();
    j["ancillae"] = spec.ancilla_sites();
    Json couplings = Json::array();
    for (const auto& t : spec.couplings()) {
        Json c;
        c["sites"] = {t.site_a, t.site_b};
        c["axes"] = std::string{axis_char(t.axis_a), axis_char(t.axis_b)};
        c["group"] = t.group;
        if (t.mult != 1.0) c["mult"] = t.mult;
        couplings.push_back(std::move(c));
    }
    j["couplings"] = std::move(couplings);
    Json fields = Json::array();
    for (const auto& t : spec.fields()) {
        Json f;
        f["site"] = t.site;
        f["axis"] = std::string{axis_char(t.axis)};
        f["group"] = t.group;
        if (t.mult != 1.0) f["mult"] = t.mult;
        fields.push_back(std::move(f));
    }
    j["fields"] = std::move(fields);
    if (spec.ancilla_state_trainable()) {
        j["ancilla_state"] = Json{{"trainable", true}};
    } else if (!spec.ancilla_sites().empty()) {
        Json amps = Json::array();
        for (Eigen::Index k = 0; k < spec.fixed_ancilla_state().amplitudes.size(); ++k) {
            const Complex a = spec.fixed_ancilla_state().amplitudes(k);
            amps.push_back({a.real(), a.imag()});
        }
        j["ancilla_state"] = Json{{"amplitudes", std::move(amps)}};
    }
    return j;
}

NetworkSpec network_from_json(const Json& j) {
    require_keys(j, "network",
                 {"num_qubits", "register", "ancillae", "couplings", "fields", "ancilla_state"});
    if (!j.contains("num_qubits") || !j.contains("register"))
        throw std::invalid_argument("network: num_qubits and register are required");
    const int n = get_int(j.at("num_qubits"), "network.num_qubits");
    std::vector<int> reg = j.at("register").get<std::vector<int>>();
    std::vector<int> anc;
    if (j.contains("ancillae")) anc = j.at("ancillae").get<std::vector<int>>();

    std::vector<CouplingTerm> couplings;
    if (j.contains("couplings")) {
        for (const auto& c : j.at("couplings")) {
            require_keys(c, "coupling", {"sites", "axes", "group", "mult"});
            CouplingTerm t;
            const auto sites = c.at("sites").get<std::vector<int>>();
            if (sites.size() != 2)
                throw std::invalid_argument("coupling: sites must hold exactly two entries");
            t.site_a = sites[0];
            t.site_b = sites[1];
            const auto axes = c.at("axes").get<std::string>();
            if (axes.size() != 2)
                throw std::invalid_argument("coupling: axes must be two characters, e.g. \"zz\"");
            t.axis_a = axis_from_char(axes[0]);
            t.axis_b = axis_from_char(axes[1]);
            t.group = c.at("group").get<std::string>();
            if (c.contains("mult")) t.mult = get_num(c.at("mult"), "coupling.mult");
            couplings.push_back(std::move(t));
        }
    }
    std::vector<FieldTerm> fields;
    if (j.contains("fields")) {
        for (const auto& f : j.at("fields")) {
            require_keys(f, "field", {"site", "axis", "group", "mult"});
            FieldTerm t;
            t.site = get_int(f.at("site"), "field.site");
            const auto axis = f.at("axis").get<std::string>();
            if (axis.size() != 1) throw std::invalid_argument("field: axis must be one character");
            t.axis = axis_from_char(axis[0]);
            t.group = f.at("group").get<std::string>();
            if (f.contains("mult")) t.mult = get_num(f.at("mult"), "field.mult");
            fields.push_back(std::move(t));
        }
    }

    bool trainable = false;
    std::optional<AncillaState> fixed;
    if (j.contains("ancilla_state")) {
        const Json& a = j.at("ancilla_state");
        require_keys(a, "ancilla_state", {"trainable", "eta", "xi", "amplitudes"});
        trainable = a.value("trainable", false);
        if (!trainable) {
            if (a.contains("amplitudes")) {
                fixed = AncillaState::from_amplitudes(
                    amplitudes_from_json(a.at("amplitudes"), "ancilla_state.amplitudes"));
            } else if (a.contains("eta") || a.contains("xi")) {
                fixed = AncillaState::from_angles(get_num(a.value("eta", Json(0.0)), "eta"),
                                                  get_num(a.value("xi", Json(0.0)), "xi"));
            }
        } else if (a.contains("amplitudes")) {
            throw std::invalid_argument("ancilla_state: a trainable state cannot fix amplitudes");
        }
    }
    return NetworkSpec(n, std::move(reg), std::move(anc), std::move(couplings), std::move(fields),
                       trainable, std::move(fixed));
}

Json lambda_to_json(const NetworkSpec& spec, const ParameterVector& lambda) {
    validate_parameters(spec, lambda);
    Json j;
    for (int g = 0; g < spec.num_groups(); ++g)
        j[spec.groups()[static_cast<std::size_t>(g)]] = lambda.values[static_cast<std::size_t>(g)];
    if (spec.ancilla_state_trainable()) {
        j["eta"] = lambda.eta(spec);
        j["xi"] = lambda.xi(spec);
    }
    return j;
}

ParameterVector lambda_from_json(const NetworkSpec& spec, const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("lambda: expected an object keyed by group");
    ParameterVector lambda;
    lambda.values.assign(static_cast<std::size_t>(spec.num_parameters()), 0.0);
    for (const auto& [key, value] : j.items()) {
        if (spec.ancilla_state_trainable() && key == "eta") {
            lambda.values[lambda.values.size() - 2] = get_num(value, "lambda.eta");
        } else if (spec.ancilla_state_trainable() && key == "xi") {
            lambda.values[lambda.values.size() - 1] = get_num(value, "lambda.xi");
        } else {
            lambda.values[static_cast<std::size_t>(spec.group_index(key))] =
                get_num(value, "lambda." + key);
        }
    }
    return lambda;
}

GateTarget target_from_json(const Json& j) {
    require_keys(j, "target", {"name", "file"});
    if (j.contains("name") == j.contains("file"))
        throw std::invalid_argument("target: give exactly one of 'name' or 'file'");
    if (j.contains("file")) return custom_gate(j.at("file").get<std::string>());
    const std::string name = j.at("name").get<std::string>();
    if (name == "toffoli") return toffoli();
    if (name == "fredkin") return fredkin();
    if (name == "sqrt-swap") return sqrt_swap();
    throw std::invalid_argument("target: unknown gate '" + name + "'");
}

TrainConfig train_config_from_json(const Json& j) {
    require_keys(j, "train",
                 {"eps0", "steps_per_state", "switch_threshold", "target_fbar", "max_sgd_iters",
                  "max_refine_iters", "num_restarts", "init_range", "checkpoint_every", "seed"});
    TrainConfig c;
    if (j.contains("eps0")) c.eps0 = get_num(j.at("eps0"), "train.eps0");
    if (j.contains("steps_per_state"))
        c.steps_per_state = get_int(j.at("steps_per_state"), "train.steps_per_state");
    if (j.contains("switch_threshold"))
        c.switch_threshold = get_num(j.at("switch_threshold"), "train.switch_threshold");
    if (j.contains("target_fbar")) c.target_fbar = get_num(j.at("target_fbar"), "train.target_fbar");
    if (j.contains("max_sgd_iters"))
        c.max_sgd_iters = get_int(j.at("max_sgd_iters"), "train.max_sgd_iters");
    if (j.contains("max_refine_iters"))
        c.max_refine_iters = get_int(j.at("max_refine_iters"), "train.max_refine_iters");
    if (j.contains("num_restarts"))
        c.num_restarts = get_int(j.at("num_restarts"), "train.num_restarts");
    if (j.contains("init_range")) {
        const auto r = j.at("init_range").get<std::vector<double>>();
        if (r.size() != 2) throw std::invalid_argument("train.init_range: expected [low, high]");
        c.init_low = r[0];
        c.init_high = r[1];
    }
    if (j.contains("checkpoint_every"))
        c.checkpoint_every = get_int(j.at("checkpoint_every"), "train.checkpoint_every");
    if (j.contains("seed")) c.rng_seed = j.at("seed").get<std::uint64_t>();
    validate_config(c);
    return c;
}

Json train_config_to_json(const TrainConfig& c) {
    return Json{{"eps0", c.eps0},
                {"steps_per_state", c.steps_per_state},
                {"switch_threshold", c.switch_threshold},
                {"target_fbar", c.target_fbar},
                {"max_sgd_iters", c.max_sgd_iters},
                {"max_refine_iters", c.max_refine_iters},
                {"num_restarts", c.num_restarts},
                {"init_range", {c.init_low, c.init_high}},
                {"checkpoint_every", c.checkpoint_every},
                {"seed", c.rng_seed}};
}

PerturbSpec perturb_spec_from_json(const Json& j) {
    require_keys(j, "perturb", {"epsilon", "draws", "include_ancilla_angles", "groups", "seed"});
    PerturbSpec p;
    if (j.contains("epsilon")) p.epsilon = get_num(j.at("epsilon"), "perturb.epsilon");
    if (j.contains("draws")) p.num_draws = get_int(j.at("draws"), "perturb.draws");
    if (j.contains("include_ancilla_angles"))
        p.include_ancilla_angles = j.at("include_ancilla_angles").get<bool>();
    if (j.contains("groups")) p.perturb_groups = j.at("groups").get<std::vector<std::string>>();
    if (j.contains("seed")) p.rng_seed = j.at("seed").get<std::uint64_t>();
    return p;
}

Experiment resolve_experiment(const Json& doc) {
    require_keys(doc, "config",
                 {"preset", "n", "alpha", "eta", "xi", "lambda", "network", "target", "train",
                  "perturb", "sweep", "units", "seed"});
    if (doc.contains("preset") == doc.contains("network"))
        throw std::invalid_argument("config: give exactly one of 'preset' or 'network'");

    NetworkSpec spec = NetworkSpec(1, {0}, {}, {}, {});
    ParameterVector lambda;
    GateTarget target;
    Json resolved = doc;

    if (doc.contains("preset")) {
        const std::string name = doc.at("preset").get<std::string>();
        Preset preset = [&]() {
            const bool has_family = doc.contains("n") || doc.contains("alpha");
            if (has_family && name != "remote-sqswap" && name != "remote-sqswap-untied")
                throw std::invalid_argument("config: n/alpha apply only to the remote presets");
            const int n = doc.contains("n") ? get_int(doc.at("n"), "config.n") : 1;
            const double alpha =
                doc.contains("alpha") ? get_num(doc.at("alpha"), "config.alpha") : 0.0;
            if (name == "remote-sqswap") return remote_sqswap_preset(n, alpha);
            if (name == "remote-sqswap-untied") return remote_sqswap_untied_preset(n, alpha);
            return get_preset(name);
        }();
        spec = preset.spec;
        lambda = preset.lambda;
        target = preset.target;
        if (doc.contains("eta") || doc.contains("xi")) {
            if (!spec.ancilla_state_trainable())
                throw std::invalid_argument("config: eta/xi apply only to trainable ancilla states");
            if (doc.contains("eta"))
                lambda.values[lambda.values.size() - 2] = get_num(doc.at("eta"), "config.eta");
            if (doc.contains("xi"))
                lambda.values[lambda.values.size() - 1] = get_num(doc.at("xi"), "config.xi");
        }
        if (doc.contains("lambda")) {
            for (const auto& [key, value] : doc.at("lambda").items()) {
                if (key == "eta" || key == "xi") {
                    if (!spec.ancilla_state_trainable())
                        throw std::invalid_argument("config: eta/xi need a trainable ancilla state");
                    lambda.values[lambda.values.size() - (key == "eta" ? 2 : 1)] =
                        get_num(value, "lambda." + key);
                } else {
                    lambda.values[static_cast<std::size_t>(spec.group_index(key))] =
                        get_num(value, "lambda." + key);
                }
            }
        }
        resolved.erase("preset");
        resolved.erase("n");
        resolved.erase("alpha");
        resolved.erase("eta");
        resolved.erase("xi");
        resolved["preset"] = preset.name;
        resolved["network"] = network_to_json(spec);
        resolved["target"] = Json{{"name", target.name}};
    } else {
        spec = network_from_json(doc.at("network"));
        if (!doc.contains("target")) throw std::invalid_argument("config: 'target' is required");
        target = target_from_json(doc.at("target"));
        lambda.values.assign(static_cast<std::size_t>(spec.num_parameters()), 0.0);
        if (spec.ancilla_state_trainable()) {
            const Json& a = doc.at("network").value("ancilla_state", Json::object());
            if (a.contains("eta")) lambda.values[lambda.values.size() - 2] = a.at("eta").get<double>();
            if (a.contains("xi")) lambda.values[lambda.values.size() - 1] = a.at("xi").get<double>();
        }
        if (doc.contains("lambda")) {
            const ParameterVector given = lambda_from_json(spec, doc.at("lambda"));
            // lambda block overrides; ancilla_state angles stay unless overridden
            for (int g = 0; g < spec.num_groups(); ++g)
                lambda.values[static_cast<std::size_t>(g)] = given.values[static_cast<std::size_t>(g)];
            if (spec.ancilla_state_trainable()) {
                if (doc.at("lambda").contains("eta"))
                    lambda.values[lambda.values.size() - 2] = given.values[given.values.size() - 2];
                if (doc.at("lambda").contains("xi"))
                    lambda.values[lambda.values.size() - 1] = given.values[given.values.size() - 1];
            }
        }
    }
    validate_parameters(spec, lambda);
    resolved["lambda"] = lambda_to_json(spec, lambda);

    return Experiment{std::move(spec), std::move(lambda), std::move(target), std::move(resolved)};
}

void apply_override(Json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("--set expects key=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw; // plain string
    }
    Json* node = &doc;
    std::size_t pos = 0;
    while (true) {
        const auto dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) throw std::invalid_argument("--set: empty path segment in '" + path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

Json trace_to_json(const NetworkSpec& spec, const TrainTrace& trace) {
    Json j;
    j["restart_index"] = trace.restart_index;
    j["switched"] = trace.switched;
    j["success"] = trace.success;
    j["aborted"] = trace.aborted;
    if (trace.aborted) j["abort_reason"] = trace.abort_reason;
    j["final_fbar"] = trace.final_fbar;
    if (!trace.final_lambda.values.empty())
        j["final_lambda"] = lambda_to_json(spec, trace.final_lambda);
    Json iters = Json::array();
    for (const auto& it : trace.sgd_iterations)
        iters.push_back(Json{{"iter", it.iter},
                             {"eps", it.eps},
                             {"state_seed", it.state_seed},
                             {"f_psi_before", it.f_psi_before},
                             {"f_psi_after", it.f_psi_after}});
    j["sgd_iterations"] = std::move(iters);
    Json sgd_cp = Json::array();
    for (const auto& cp : trace.sgd_checkpoints)
        sgd_cp.push_back(Json{{"iter", cp.iter}, {"f_bar", cp.f_bar}});
    j["sgd_checkpoints"] = std::move(sgd_cp);
    Json ref_cp = Json::array();
    for (const auto& cp : trace.refine_checkpoints)
        ref_cp.push_back(Json{{"iter", cp.iter}, {"f_bar", cp.f_bar}});
    j["refine_checkpoints"] = std::move(ref_cp);
    return j;
}

std::string trace_checkpoints_csv(const TrainTrace& trace) {
    std::string out = "phase,iter,f_bar\n";
    for (const auto& cp : trace.sgd_checkpoints)
        out += "sgd," + std::to_string(cp.iter) + "," + csv_num(cp.f_bar) + "\n";
    for (const auto& cp : trace.refine_checkpoints)
        out += "refine," + std::to_string(cp.iter) + "," + csv_num(cp.f_bar) + "\n";
    return out;
}

Json liecheck_to_json(const LieCheckReport& rep) {
    return Json{{"pass", rep.pass},
                {"algebra_dim", rep.algebra_dim},
                {"residual", rep.residual},
                {"branch", rep.branch_note}};
}

Json bottom_up_to_json(const BottomUpResult& res) {
    Json steps = Json::array();
    for (const auto& s : res.log)
        steps.push_back(Json{{"group", s.group}, {"algebra_dim", s.algebra_dim}, {"pass", s.pass}});
    return Json{{"success", res.success},
                {"network", network_to_json(res.spec)},
                {"steps", std::move(steps)}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "param_value,f_bar";
    const std::size_t probes = rows.empty() ? 0 : rows.front().f_psi.size();
    for (std::size_t p = 1; p <= probes; ++p) out += ",f_psi_" + std::to_string(p);
    out += "\n";
    for (const auto& row : rows) {
        out += csv_num(row.value) + "," + csv_num(row.f_bar);
        for (double f : row.f_psi) out += "," + csv_num(f);
        out += "\n";
    }
    return out;
}

std::string perturb_csv(const PerturbStats& stats) {
    std::string out = "draw,f_bar\n";
    for (std::size_t d = 0; d < stats.fbar_draws.size(); ++d)
        out += std::to_string(d) + "," + csv_num(stats.fbar_draws[d]) + "\n";
    return out;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename to '" + path + "' failed");
}

} // namespace gatenet
