#include "gatenet/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "gatenet/dynamics.hpp"

namespace gatenet {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double fbar_at(const NetworkSpec& spec, const ParameterVector& lambda, const GateTarget& target) {
    return avg_fidelity(spec, lambda, resolve_ancilla(spec, lambda), target);
}

std::uint64_t restart_seed(const TrainConfig& config, int restart_index) {
    return derive_seed(config.rng_seed, 0x5eedULL + static_cast<std::uint64_t>(restart_index));
}

} // namespace

void validate_config(const TrainConfig& config) {
    if (!(config.eps0 > 0.0)) throw std::invalid_argument("TrainConfig: eps0 must be positive");
    if (config.steps_per_state < 1)
        throw std::invalid_argument("TrainConfig: steps_per_state must be >= 1");
    if (!(config.switch_threshold > 0.0 && config.switch_threshold < config.target_fbar &&
          config.target_fbar <= 1.0))
        throw std::invalid_argument("TrainConfig: need 0 < switch_threshold < target_fbar <= 1");
    if (config.max_sgd_iters < 0 || config.max_refine_iters < 0 || config.num_restarts < 0)
        throw std::invalid_argument("TrainConfig: iteration counts must be nonnegative");
    if (config.checkpoint_every < 1)
        throw std::invalid_argument("TrainConfig: checkpoint_every must be >= 1");
    if (!(config.init_low <= config.init_high) || !std::isfinite(config.init_low) ||
        !std::isfinite(config.init_high))
        throw std::invalid_argument("TrainConfig: bad init range");
}

TrainTrace sgd_run(const NetworkSpec& spec, const GateTarget& target, const TrainConfig& config,
                   int restart_index, const std::optional<ParameterVector>& start) {
    validate_config(config);
    const auto t0 = Clock::now();

    TrainTrace trace;
    trace.restart_index = restart_index;

    ParameterVector lambda;
    if (start) {
        lambda = *start;
        validate_parameters(spec, lambda);
    } else {
        Rng init_rng(restart_seed(config, restart_index));
        lambda.values.resize(static_cast<std::size_t>(spec.num_parameters()));
        for (double& v : lambda.values) v = init_rng.uniform(config.init_low, config.init_high);
    }

    const auto checkpoint = [&](int iter) {
        const double f = fbar_at(spec, lambda, target);
        trace.sgd_checkpoints.push_back({iter, f});
        return f;
    };

    trace.switched = checkpoint(0) > config.switch_threshold;
    for (int m = 1; m <= config.max_sgd_iters && !trace.switched; ++m) {
        const double eps = config.eps0 / std::sqrt(static_cast<double>(m));
        const std::uint64_t state_seed =
            derive_seed(restart_seed(config, restart_index), static_cast<std::uint64_t>(m));
        Rng state_rng(state_seed);
        const Vector psi = sample_haar_state(spec.register_dim(), state_rng);

        SgdIteration rec;
        rec.iter = m;
        rec.eps = eps;
        rec.state_seed = state_seed;
        rec.f_psi_before =
            state_fidelity(spec, lambda, resolve_ancilla(spec, lambda), psi, target);
        for (int step = 0; step < config.steps_per_state; ++step) {
            const auto grad =
                grad_state_fidelity(spec, lambda, resolve_ancilla(spec, lambda), psi, target);
            if (!all_finite(grad)) {
                trace.aborted = true;
                trace.abort_reason = "non-finite gradient at iteration " + std::to_string(m);
                break;
            }
            for (std::size_t k = 0; k < grad.size(); ++k) lambda.values[k] += eps * grad[k];
        }
        rec.f_psi_after = trace.aborted
                              ? rec.f_psi_before
                              : state_fidelity(spec, lambda, resolve_ancilla(spec, lambda), psi,
                                               target);
        trace.sgd_iterations.push_back(rec);
        if (trace.aborted) break;
        if (m % config.checkpoint_every == 0)
            trace.switched = checkpoint(m) > config.switch_threshold;
    }

    trace.final_lambda = lambda;
    trace.final_fbar = trace.sgd_checkpoints.back().f_bar;
    // The last checkpoint may predate the last update; refresh if so.
    if (!trace.sgd_iterations.empty() &&
        trace.sgd_checkpoints.back().iter != trace.sgd_iterations.back().iter)
        trace.final_fbar = fbar_at(spec, lambda, target);
    trace.success = trace.final_fbar >= config.target_fbar;
    trace.wall_seconds = seconds_since(t0);
    return trace;
}

TrainTrace refine(const NetworkSpec& spec, const GateTarget& target,
                  const ParameterVector& lambda_start, const TrainConfig& config) {
    validate_config(config);
    validate_parameters(spec, lambda_start);
    const auto t0 = Clock::now();

    TrainTrace trace;
    ParameterVector lambda = lambda_start;
    double f = fbar_at(spec, lambda, target);
    trace.refine_checkpoints.push_back({0, f});

    for (int it = 1; it <= config.max_refine_iters; ++it) {
        const auto grad =
            grad_avg_fidelity(spec, lambda, resolve_ancilla(spec, lambda), target);
        if (!all_finite(grad)) {
            trace.aborted = true;
            trace.abort_reason = "non-finite gradient at refine iteration " + std::to_string(it);
            break;
        }
        double grad_norm = 0.0;
        for (double g : grad) grad_norm += g * g;
        grad_norm = std::sqrt(grad_norm);
        if (grad_norm < 1e-9) break;

        double step = 0.1;
        bool accepted = false;
        while (step >= 1e-12) {
            ParameterVector trial = lambda;
            for (std::size_t k = 0; k < grad.size(); ++k) trial.values[k] += step * grad[k];
            const double f_trial = fbar_at(spec, trial, target);
            if (f_trial > f) {
                lambda = std::move(trial);
                f = f_trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        trace.refine_checkpoints.push_back({it, f});
    }

    trace.final_lambda = lambda;
    trace.final_fbar = f;
    trace.success = f >= config.target_fbar;
    trace.wall_seconds = seconds_since(t0);
    return trace;
}

TrainTrace train(const NetworkSpec& spec, const GateTarget& target, const TrainConfig& config) {
    validate_config(config);
    const auto t0 = Clock::now();

    TrainTrace best;
    best.restart_index = -1;
    best.final_fbar = -1.0;

    for (int r = 0; r < config.num_restarts; ++r) {
        TrainTrace trace = sgd_run(spec, target, config, r);
        if (!trace.aborted && trace.switched) {
            TrainTrace refined = refine(spec, target, trace.final_lambda, config);
            trace.refine_checkpoints = std::move(refined.refine_checkpoints);
            trace.final_lambda = std::move(refined.final_lambda);
            trace.final_fbar = refined.final_fbar;
            trace.success = refined.success;
            trace.aborted = refined.aborted;
            trace.abort_reason = refined.abort_reason;
        }
        if (trace.final_fbar > best.final_fbar) best = std::move(trace);
        if (best.success) break;
    }

    if (best.restart_index < 0) {
        // num_restarts == 0: nothing was evaluated.
        best.final_fbar = 0.0;
        best.success = false;
    }
    best.wall_seconds = seconds_since(t0);
    return best;
}

PerturbStats perturb_study(const NetworkSpec& spec, const GateTarget& target,
                           const ParameterVector& lambda_opt, const AncillaState& ancilla,
                           const PerturbSpec& pspec) {
    if (pspec.epsilon < 0.0) throw std::invalid_argument("PerturbSpec: epsilon must be >= 0");
    if (pspec.num_draws < 1) throw std::invalid_argument("PerturbSpec: num_draws must be >= 1");
    validate_parameters(spec, lambda_opt);

    Rng rng(pspec.rng_seed);
    PerturbStats stats;
    stats.fbar_draws.reserve(static_cast<std::size_t>(pspec.num_draws));
    std::vector<std::size_t> perturbed;
    if (pspec.perturb_groups.empty()) {
        for (int g = 0; g < spec.num_groups(); ++g) perturbed.push_back(static_cast<std::size_t>(g));
    } else {
        for (const auto& name : pspec.perturb_groups)
            perturbed.push_back(static_cast<std::size_t>(spec.group_index(name)));
    }
    if (pspec.include_ancilla_angles && spec.ancilla_state_trainable()) {
        perturbed.push_back(static_cast<std::size_t>(spec.num_parameters()) - 2);
        perturbed.push_back(static_cast<std::size_t>(spec.num_parameters()) - 1);
    }
    for (int d = 0; d < pspec.num_draws; ++d) {
        ParameterVector lambda = lambda_opt;
        for (std::size_t k : perturbed) lambda.values[k] += pspec.epsilon * rng.uniform();
        const AncillaState anc =
            pspec.include_ancilla_angles && spec.ancilla_state_trainable()
                ? resolve_ancilla(spec, lambda)
                : ancilla;
        stats.fbar_draws.push_back(avg_fidelity(spec, lambda, anc, target));
    }
    stats.mean = 0.0;
    stats.min = stats.fbar_draws.front();
    stats.max = stats.fbar_draws.front();
    for (double f : stats.fbar_draws) {
        stats.mean += f;
        stats.min = std::min(stats.min, f);
        stats.max = std::max(stats.max, f);
    }
    stats.mean /= static_cast<double>(pspec.num_draws);
    return stats;
}

std::vector<SweepRow> sweep(const NetworkSpec& spec, const GateTarget& target,
                            const ParameterVector& lambda_opt, const AncillaState& ancilla,
                            const std::string& group, const std::vector<double>& grid,
                            int probe_states, std::uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    if (probe_states < 0) throw std::invalid_argument("sweep: negative probe count");
    validate_parameters(spec, lambda_opt);
    const int gidx = spec.group_index(group);

    Rng rng(seed);
    std::vector<Vector> probes;
    probes.reserve(static_cast<std::size_t>(probe_states));
    for (int p = 0; p < probe_states; ++p)
        probes.push_back(sample_haar_state(spec.register_dim(), rng));

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double value : grid) {
        ParameterVector lambda = lambda_opt;
        lambda.values[static_cast<std::size_t>(gidx)] = value;
        const Matrix u = propagator(assemble_hamiltonian(spec, lambda));
        SweepRow row;
        row.value = value;
        row.f_bar = avg_fidelity_with(superoperator_with(u, spec, ancilla), target);
        row.f_psi.reserve(probes.size());
        for (const auto& psi : probes)
            row.f_psi.push_back(state_fidelity_with(u, spec, ancilla, psi, target));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace gatenet
