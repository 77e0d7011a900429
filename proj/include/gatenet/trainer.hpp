// trainer.hpp — The learning loop: stochastic gradient ascent on the
// single-state fidelity with a decaying rate eps_m = eps0 / sqrt(m), a
// switch-over to deterministic ascent on the average fidelity once it clears
// a threshold, restarts, perturbation-robustness studies, and 1-D landscape
// sweeps. Every stochastic operation is reproducible from (seed, config).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gatenet/fidelity.hpp"
#include "gatenet/network.hpp"

namespace gatenet {

struct TrainConfig {
    double eps0 = 0.3;              // initial learning rate
    int steps_per_state = 1;        // deterministic updates per sampled state
    double switch_threshold = 0.95; // F̄ level that ends the stochastic phase
    double target_fbar = 1.0 - 1e-6;
    int max_sgd_iters = 2000;
    int max_refine_iters = 500;
    int num_restarts = 10;
    double init_low = -10.0; // uniform init range for every free parameter
    double init_high = 10.0;
    int checkpoint_every = 50; // F̄ evaluation cadence during SGD
    std::uint64_t rng_seed = 0;
};

void validate_config(const TrainConfig& config);

struct SgdIteration {
    int iter = 0; // m, 1-based
    double eps = 0.0;
    std::uint64_t state_seed = 0; // reproduces the sampled Haar state
    double f_psi_before = 0.0;
    double f_psi_after = 0.0;
};

struct Checkpoint {
    int iter = 0;
    double f_bar = 0.0;
};

struct TrainTrace {
    std::vector<SgdIteration> sgd_iterations;
    std::vector<Checkpoint> sgd_checkpoints;    // cadenced F̄ during SGD
    std::vector<Checkpoint> refine_checkpoints; // per-accepted-step F̄ during refinement
    ParameterVector final_lambda;
    double final_fbar = 0.0;
    int restart_index = 0;
    bool switched = false; // SGD reached the switch threshold
    bool success = false;  // final F̄ >= target_fbar
    bool aborted = false;  // non-finite gradient
    std::string abort_reason;
    double wall_seconds = 0.0; // not part of the deterministic trace export
};

// One stochastic phase: random init on [init_low, init_high] (or the given
// start), then per iteration sample a Haar state and apply eps_m-scaled
// gradient steps on F_psi. Checkpoints F̄ at the configured cadence (and at
// iteration 0); stops when a checkpoint exceeds switch_threshold or at
// max_sgd_iters.
TrainTrace sgd_run(const NetworkSpec& spec, const GateTarget& target, const TrainConfig& config,
                   int restart_index = 0,
                   const std::optional<ParameterVector>& start = std::nullopt);

// Deterministic ascent on F̄ with backtracking line search (trial step 0.1,
// halved until F̄ increases). F̄ is non-decreasing along the trace; stops when
// the gradient norm falls under 1e-9, the accepted step under 1e-12, or at
// max_refine_iters.
TrainTrace refine(const NetworkSpec& spec, const GateTarget& target,
                  const ParameterVector& lambda_start, const TrainConfig& config);

// Up to num_restarts of (sgd_run, then refine when the switch was reached);
// returns the restart with the highest final F̄, stopping early on success.
TrainTrace train(const NetworkSpec& spec, const GateTarget& target, const TrainConfig& config);

struct PerturbSpec {
    double epsilon = 0.0; // perturbation strength; lambda_k += epsilon * U[0,1]
    int num_draws = 1;
    bool include_ancilla_angles = false;
    // Tie groups to perturb; empty means every Hamiltonian group. Lets a
    // study mistune only the couplings while the local fields stay exact.
    std::vector<std::string> perturb_groups;
    std::uint64_t rng_seed = 0;
};

struct PerturbStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::vector<double> fbar_draws; // per-draw F̄, in draw order
};

// F̄ statistics under additive uniform perturbations of the free Hamiltonian
// parameters (ancilla angles only when flagged).
PerturbStats perturb_study(const NetworkSpec& spec, const GateTarget& target,
                           const ParameterVector& lambda_opt, const AncillaState& ancilla,
                           const PerturbSpec& pspec);

struct SweepRow {
    double value = 0.0;
    double f_bar = 0.0;
    std::vector<double> f_psi; // one entry per probe state
};

// Substitutes each grid value into the named tie group and evaluates F̄ plus
// F_psi for probe states sampled once from the seed.
std::vector<SweepRow> sweep(const NetworkSpec& spec, const GateTarget& target,
                            const ParameterVector& lambda_opt, const AncillaState& ancilla,
                            const std::string& group, const std::vector<double>& grid,
                            int probe_states, std::uint64_t seed);

} // namespace gatenet
