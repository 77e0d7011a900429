// gatenet — design static qubit-network couplings whose free evolution
// implements a target gate. Subcommands: eval, train, sweep, perturb,
// liecheck, units. Each writes a results.json (plus command-specific CSV/JSON
// files) into --out and prints a short summary. Exit codes: 0 success,
// 1 usage or config error, 2 non-convergence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gatenet/config_io.hpp"
#include "gatenet/dynamics.hpp"
#include "gatenet/fidelity.hpp"
#include "gatenet/liealg.hpp"
#include "gatenet/presets.hpp"
#include "gatenet/trainer.hpp"
#include "gatenet/version.hpp"

namespace {

using gatenet::Json;

struct CommonArgs {
    std::string preset;
    std::string config_file;
    std::vector<std::string> sets;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--preset", args.preset, "bundled configuration (see --list-presets)");
    cmd->add_option("--config", args.config_file, "JSON experiment file");
    cmd->add_option("--set", args.sets, "override a config path, e.g. --set lambda.J_xx_34=15");
    cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", args.seed, "seed for the command's random stream");
}

Json load_document(const CommonArgs& args) {
    Json doc = Json::object();
    if (!args.config_file.empty()) {
        std::ifstream in(args.config_file);
        if (!in) throw std::invalid_argument("cannot open config '" + args.config_file + "'");
        try {
            in >> doc;
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument("config '" + args.config_file + "': " + e.what());
        }
    }
    if (!args.preset.empty()) {
        if (doc.contains("network"))
            throw std::invalid_argument("--preset cannot be combined with a 'network' config");
        doc["preset"] = args.preset;
    }
    for (const auto& s : args.sets) gatenet::apply_override(doc, s);
    return doc;
}

void write_results(const CommonArgs& args, const std::string& command, Json body) {
    body["command"] = command;
    body["version"] = gatenet::kVersion;
    std::filesystem::create_directories(args.out_dir);
    gatenet::atomic_write_file((std::filesystem::path(args.out_dir) / "results.json").string(),
                               body.dump(2) + "\n");
}

void write_text(const CommonArgs& args, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(args.out_dir);
    gatenet::atomic_write_file((std::filesystem::path(args.out_dir) / name).string(), content);
}

double parse_time_seconds(const std::string& text) {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    std::string unit = text.substr(pos);
    if (unit.empty() || unit == "s") return value;
    if (unit == "ns") return value * 1e-9;
    if (unit == "us") return value * 1e-6;
    if (unit == "ms") return value * 1e-3;
    throw std::invalid_argument("unknown time unit '" + unit + "' (use ns, us, ms or s)");
}

int cmd_eval(const CommonArgs& args, int samples) {
    const Json doc = load_document(args);
    const gatenet::Experiment exp = gatenet::resolve_experiment(doc);
    const std::uint64_t seed = args.seed.value_or(1);

    const double f_bar =
        gatenet::avg_fidelity(exp.spec, exp.lambda, resolve_ancilla(exp.spec, exp.lambda),
                              exp.target);
    const gatenet::FidelityReport rep = gatenet::fidelity_variance(
        exp.spec, exp.lambda, resolve_ancilla(exp.spec, exp.lambda), exp.target, samples, seed);

    Json body;
    body["config"] = exp.document;
    body["seed"] = seed;
    body["f_bar"] = f_bar;
    body["f_psi"] = Json{{"mean", rep.sample_mean},
                         {"variance", rep.sample_variance},
                         {"samples", rep.num_samples}};
    std::printf("target %s on %d-qubit register, %d ancilla(e)\n", exp.target.name.c_str(),
                static_cast<int>(exp.spec.register_sites().size()),
                static_cast<int>(exp.spec.ancilla_sites().size()));
    std::printf("F_bar        = %.6f\n", f_bar);
    std::printf("F_psi sample = %.6f (var %.3e, n=%d)\n", rep.sample_mean, rep.sample_variance,
                rep.num_samples);

    if (!exp.spec.ancilla_sites().empty()) {
        const gatenet::Matrix u =
            gatenet::propagator(gatenet::assemble_hamiltonian(exp.spec, exp.lambda));
        const auto fac = gatenet::factorization_check(
            u, static_cast<int>(exp.spec.register_sites().size()),
            static_cast<int>(exp.spec.ancilla_sites().size()));
        body["factorization"] =
            Json{{"factorizes", fac.factorizes}, {"schmidt_ratio", fac.schmidt_ratio}};
        std::printf("propagator factorizes across register|ancilla cut: %s (schmidt ratio %.2e)\n",
                    fac.factorizes ? "yes" : "no", fac.schmidt_ratio);
    }
    write_results(args, "eval", std::move(body));
    return 0;
}

int cmd_train(const CommonArgs& args) {
    const Json doc = load_document(args);
    const gatenet::Experiment exp = gatenet::resolve_experiment(doc);
    gatenet::TrainConfig config =
        gatenet::train_config_from_json(doc.value("train", Json::object()));
    if (args.seed) config.rng_seed = *args.seed;

    const gatenet::TrainTrace trace = gatenet::train(exp.spec, exp.target, config);

    Json body;
    body["config"] = exp.document;
    body["train"] = gatenet::train_config_to_json(config);
    body["success"] = trace.success;
    body["final_fbar"] = trace.final_fbar;
    body["restart_index"] = trace.restart_index;
    body["wall_seconds"] = trace.wall_seconds;
    write_results(args, "train", std::move(body));
    write_text(args, "trace.json",
               gatenet::trace_to_json(exp.spec, trace).dump(2) + "\n");
    write_text(args, "trace_checkpoints.csv", gatenet::trace_checkpoints_csv(trace));

    std::printf("%s: final F_bar = %.9f after restart %d (%.1f s)\n",
                trace.success ? "converged" : "did not converge", trace.final_fbar,
                trace.restart_index, trace.wall_seconds);
    return trace.success ? 0 : 2;
}

int cmd_sweep(const CommonArgs& args, std::string group, double lo, double hi, double step,
              int probes) {
    const Json doc = load_document(args);
    const gatenet::Experiment exp = gatenet::resolve_experiment(doc);
    const Json sw = doc.value("sweep", Json::object());
    if (group.empty()) group = sw.value("group", "");
    if (group.empty()) throw std::invalid_argument("sweep: --group is required");
    if (sw.contains("min") && lo == 0.0 && hi == 0.0) {
        lo = sw.at("min").get<double>();
        hi = sw.at("max").get<double>();
        step = sw.value("step", step);
    }
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("sweep: need min <= max and step > 0");
    const std::uint64_t seed = args.seed.value_or(1);

    std::vector<double> grid;
    for (double v = lo; v <= hi + step * 0.5; v += step) grid.push_back(v);
    const auto rows = gatenet::sweep(exp.spec, exp.target, exp.lambda,
                                     resolve_ancilla(exp.spec, exp.lambda), group, grid, probes,
                                     seed);

    std::size_t best = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].f_bar > rows[best].f_bar) best = i;

    Json body;
    body["config"] = exp.document;
    body["seed"] = seed;
    body["group"] = group;
    body["grid"] = Json{{"min", lo}, {"max", hi}, {"step", step}};
    body["best"] = Json{{"value", rows[best].value}, {"f_bar", rows[best].f_bar}};
    write_results(args, "sweep", std::move(body));
    write_text(args, "sweep.csv", gatenet::sweep_csv(rows));
    std::printf("swept %s over [%g, %g] (%zu points): max F_bar = %.6f at %g\n", group.c_str(), lo,
                hi, rows.size(), rows[best].f_bar, rows[best].value);
    return 0;
}

int cmd_perturb(const CommonArgs& args, double eps, int draws, bool include_angles,
                const std::vector<std::string>& groups) {
    const Json doc = load_document(args);
    const gatenet::Experiment exp = gatenet::resolve_experiment(doc);
    gatenet::PerturbSpec pspec =
        gatenet::perturb_spec_from_json(doc.value("perturb", Json::object()));
    if (eps >= 0.0) pspec.epsilon = eps;
    if (draws > 0) pspec.num_draws = draws;
    if (include_angles) pspec.include_ancilla_angles = true;
    if (!groups.empty()) pspec.perturb_groups = groups;
    if (args.seed) pspec.rng_seed = *args.seed;

    const auto stats = gatenet::perturb_study(exp.spec, exp.target, exp.lambda,
                                              resolve_ancilla(exp.spec, exp.lambda), pspec);
    Json body;
    body["config"] = exp.document;
    body["seed"] = pspec.rng_seed;
    body["epsilon"] = pspec.epsilon;
    body["draws"] = pspec.num_draws;
    body["f_bar"] = Json{{"mean", stats.mean}, {"min", stats.min}, {"max", stats.max}};
    write_results(args, "perturb", std::move(body));
    write_text(args, "perturb.csv", gatenet::perturb_csv(stats));
    std::printf("perturbation eps=%g over %d draws: mean F_bar = %.6f (min %.6f, max %.6f)\n",
                pspec.epsilon, pspec.num_draws, stats.mean, stats.min, stats.max);
    return 0;
}

int cmd_liecheck(const CommonArgs& args, const std::vector<std::string>& drop) {
    const Json doc = load_document(args);
    const gatenet::Experiment exp = gatenet::resolve_experiment(doc);
    gatenet::NetworkSpec spec = exp.spec;
    for (const auto& g : drop) spec = spec.without_group(g);

    const gatenet::LieCheckReport rep = gatenet::necessary_condition(spec, exp.target);
    Json body;
    body["config"] = exp.document;
    if (!drop.empty()) body["dropped_groups"] = drop;
    body["liecheck"] = gatenet::liecheck_to_json(rep);
    write_results(args, "liecheck", body);
    write_text(args, "liecheck.json", gatenet::liecheck_to_json(rep).dump(2) + "\n");
    std::printf("%s: algebra dim %d, target-generator residual %.3e\n",
                rep.pass ? "PASS" : "FAIL", rep.algebra_dim, rep.residual);
    return 0;
}

int cmd_units(const CommonArgs& args, const std::string& time_text) {
    const Json doc = load_document(args);
    const gatenet::Experiment exp = gatenet::resolve_experiment(doc);
    const double t = parse_time_seconds(time_text);
    const auto group_values = exp.lambda.group_values(exp.spec);
    const auto mhz = gatenet::to_physical_units(group_values, t);

    Json table;
    std::printf("%-14s %14s %14s\n", "group", "dimensionless", "MHz");
    for (int g = 0; g < exp.spec.num_groups(); ++g) {
        const std::string& name = exp.spec.groups()[static_cast<std::size_t>(g)];
        table[name] = Json{{"dimensionless", group_values[static_cast<std::size_t>(g)]},
                           {"mhz", mhz[static_cast<std::size_t>(g)]}};
        std::printf("%-14s %14.6g %14.6g\n", name.c_str(),
                    group_values[static_cast<std::size_t>(g)], mhz[static_cast<std::size_t>(g)]);
    }
    Json body;
    body["config"] = exp.document;
    body["gate_time_seconds"] = t;
    body["units"] = std::move(table);
    write_results(args, "units", std::move(body));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"static qubit-network gate design"};
    app.require_subcommand(1);
    app.set_version_flag("--version", gatenet::kVersion);

    CommonArgs eval_args, train_args, sweep_args, perturb_args, lie_args, units_args;
    int eval_samples = 200;
    std::string sweep_group;
    double sweep_min = 0.0, sweep_max = 0.0, sweep_step = 0.05;
    int sweep_probes = 4;
    double perturb_eps = -1.0;
    int perturb_draws = 0;
    bool perturb_angles = false;
    std::vector<std::string> perturb_groups;
    std::vector<std::string> lie_drop;
    std::string units_time = "60ns";

    CLI::App* eval = app.add_subcommand("eval", "evaluate fidelity of a configuration");
    add_common(eval, eval_args);
    eval->add_option("--samples", eval_samples, "Haar samples for F_psi statistics")
        ->capture_default_str();

    CLI::App* train = app.add_subcommand("train", "learn couplings for the target gate");
    add_common(train, train_args);

    CLI::App* sweep = app.add_subcommand("sweep", "1-D fidelity landscape over one tie group");
    add_common(sweep, sweep_args);
    sweep->add_option("--group", sweep_group, "tie group to sweep");
    sweep->add_option("--min", sweep_min, "grid start");
    sweep->add_option("--max", sweep_max, "grid end");
    sweep->add_option("--step", sweep_step, "grid step")->capture_default_str();
    sweep->add_option("--probes", sweep_probes, "number of probe states")->capture_default_str();

    CLI::App* perturb = app.add_subcommand("perturb", "fidelity under random coupling offsets");
    add_common(perturb, perturb_args);
    perturb->add_option("--eps", perturb_eps, "perturbation strength");
    perturb->add_option("--draws", perturb_draws, "number of perturbation draws");
    perturb->add_flag("--include-angles", perturb_angles, "also perturb ancilla angles");
    perturb->add_option("--groups", perturb_groups,
                        "tie groups to perturb (default: all Hamiltonian groups)");

    CLI::App* liecheck = app.add_subcommand("liecheck", "dynamical-Lie-algebra necessary condition");
    add_common(liecheck, lie_args);
    liecheck->add_option("--drop", lie_drop, "tie group(s) to remove before the check");

    CLI::App* units = app.add_subcommand("units", "convert couplings to MHz at a gate time");
    add_common(units, units_args);
    units->add_option("--time", units_time, "gate time, e.g. 60ns")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eval->parsed()) return cmd_eval(eval_args, eval_samples);
        if (train->parsed()) return cmd_train(train_args);
        if (sweep->parsed())
            return cmd_sweep(sweep_args, sweep_group, sweep_min, sweep_max, sweep_step,
                             sweep_probes);
        if (perturb->parsed())
            return cmd_perturb(perturb_args, perturb_eps, perturb_draws, perturb_angles,
                               perturb_groups);
        if (liecheck->parsed()) return cmd_liecheck(lie_args, lie_drop);
        if (units->parsed()) return cmd_units(units_args, units_time);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
