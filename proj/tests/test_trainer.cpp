#include <doctest.h>

#include "gatenet/presets.hpp"
#include "gatenet/trainer.hpp"
#include "oracles.hpp"

using namespace gatenet;

namespace {

NetworkSpec toy_spec() { return NetworkSpec(1, {0}, {}, {}, {{0, Axis::X, "h", 1.0}}); }

GateTarget target_x() {
    GateTarget g;
    g.name = "x";
    g.unitary = pauli_matrix(PauliString::single(1, 0, Axis::X));
    return g;
}

TrainConfig toy_config() {
    TrainConfig c;
    c.eps0 = 0.5;
    c.max_sgd_iters = 500;
    c.num_restarts = 1;
    c.init_low = -10.0;
    c.init_high = 10.0;
    c.rng_seed = 2024;
    return c;
}

} // namespace

TEST_SUITE_BEGIN("trainer");

TEST_CASE("config validation") {
    TrainConfig c;
    c.eps0 = 0.0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c = TrainConfig{};
    c.switch_threshold = 1.5;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c = TrainConfig{};
    c.checkpoint_every = 0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
}

TEST_CASE("single-qubit toy trains to the X gate") {
    TrainTrace trace = train(toy_spec(), target_x(), toy_config());
    CHECK(trace.success);
    CHECK(trace.final_fbar > 1.0 - 1e-6);
    // the landscape maximizer is h = pi (mod 2 pi)
    const double h = trace.final_lambda.values[0];
    const double wrapped = std::fmod(std::fmod(h, 2 * M_PI) + 2 * M_PI, 2 * M_PI);
    CHECK(std::abs(wrapped - M_PI) < 1e-3);
}

TEST_CASE("learning rate follows eps0 / sqrt(m) exactly") {
    TrainConfig c = toy_config();
    c.max_sgd_iters = 40;
    c.switch_threshold = 0.999; // keep it stochastic for the whole run
    c.target_fbar = 0.9999;
    TrainTrace trace = sgd_run(toy_spec(), target_x(), c);
    for (const auto& it : trace.sgd_iterations)
        CHECK(it.eps == c.eps0 / std::sqrt(static_cast<double>(it.iter)));
}

TEST_CASE("zero-parameter spec runs but never moves") {
    NetworkSpec empty(2, {0, 1}, {}, {}, {});
    GateTarget id{"id", Matrix::Identity(4, 4), {}};
    TrainConfig c = toy_config();
    c.max_sgd_iters = 10;
    TrainTrace trace = sgd_run(empty, id, c);
    CHECK(trace.final_fbar == doctest::Approx(1.0)); // identity channel, identity target
    for (std::size_t k = 1; k < trace.sgd_checkpoints.size(); ++k)
        CHECK(trace.sgd_checkpoints[k].f_bar == trace.sgd_checkpoints[0].f_bar);
}

TEST_CASE("sgd seeded at the toffoli optimum switches immediately") {
    Preset tof = toffoli_preset();
    TrainConfig c;
    c.rng_seed = 1;
    c.max_sgd_iters = 100;
    TrainTrace trace = sgd_run(tof.spec, tof.target, c, 0, tof.lambda);
    CHECK(trace.switched);
    REQUIRE(!trace.sgd_checkpoints.empty());
    CHECK(trace.sgd_checkpoints.front().iter == 0);
    CHECK(trace.sgd_checkpoints.front().f_bar >= 0.9998 - 5e-4);
    CHECK(trace.sgd_checkpoints.back().iter <= 50);
}

TEST_CASE("refine is monotone and recovers the optimum from a perturbed start") {
    Preset tof = toffoli_preset();
    TrainConfig c;
    c.max_refine_iters = 300;

    // start exactly at the optimum: no decrease
    TrainTrace at_opt = refine(tof.spec, tof.target, tof.lambda, c);
    CHECK(at_opt.final_fbar >= 0.9998 - 5e-4);

    // start at optimum + 0.05 r with a fixed seed
    Rng rng(4242);
    ParameterVector start = tof.lambda;
    for (int g = 0; g < tof.spec.num_groups(); ++g) start.values[g] += 0.05 * rng.uniform();
    TrainTrace trace = refine(tof.spec, tof.target, start, c);
    CHECK(trace.final_fbar >= 0.9998 - 5e-4);
    for (std::size_t k = 1; k < trace.refine_checkpoints.size(); ++k)
        CHECK(trace.refine_checkpoints[k].f_bar >= trace.refine_checkpoints[k - 1].f_bar);
}

TEST_CASE("refine solves the unimodal toy to the analytic maximizer") {
    TrainConfig c;
    c.max_refine_iters = 2000;
    TrainTrace trace = refine(toy_spec(), target_x(), ParameterVector{{2.5}}, c);
    CHECK(std::abs(trace.final_lambda.values[0] - M_PI) < 1e-6);
    CHECK(trace.final_fbar == doctest::Approx(1.0));
}

TEST_CASE("train with max_sgd_iters = 0 returns the initial point") {
    TrainConfig c = toy_config();
    c.max_sgd_iters = 0;
    c.num_restarts = 1;
    TrainTrace trace = train(toy_spec(), target_x(), c);
    CHECK(trace.sgd_iterations.empty());
    REQUIRE(trace.sgd_checkpoints.size() == 1);
    CHECK_FALSE(trace.success);
}

TEST_CASE("train with zero restarts reports non-convergence") {
    TrainConfig c = toy_config();
    c.num_restarts = 0;
    TrainTrace trace = train(toy_spec(), target_x(), c);
    CHECK_FALSE(trace.success);
}

TEST_CASE("identical seeds give identical traces") {
    TrainConfig c = toy_config();
    c.max_sgd_iters = 60;
    TrainTrace a = train(toy_spec(), target_x(), c);
    TrainTrace b = train(toy_spec(), target_x(), c);
    REQUIRE(a.sgd_iterations.size() == b.sgd_iterations.size());
    for (std::size_t k = 0; k < a.sgd_iterations.size(); ++k) {
        CHECK(a.sgd_iterations[k].state_seed == b.sgd_iterations[k].state_seed);
        CHECK(a.sgd_iterations[k].f_psi_after == b.sgd_iterations[k].f_psi_after);
    }
    CHECK(a.final_fbar == b.final_fbar);
    CHECK(a.final_lambda.values == b.final_lambda.values);
}

TEST_CASE("unit state fidelities on an exact gate imply a converged average") {
    // on exact-gate constructions, 100 consecutive Haar states at F_psi = 1
    // go with F_bar >= 0.999
    struct Case {
        NetworkSpec spec;
        ParameterVector lambda;
        GateTarget target;
    };
    Preset fred = fredkin_preset();
    std::vector<Case> cases;
    cases.push_back({toy_spec(), ParameterVector{{M_PI}}, target_x()});
    cases.push_back({fred.spec, fred.lambda, fred.target});
    for (const auto& c : cases) {
        const AncillaState anc = resolve_ancilla(c.spec, c.lambda);
        const Matrix u = propagator(assemble_hamiltonian(c.spec, c.lambda));
        Rng rng(55);
        bool all_unit = true;
        for (int s = 0; s < 100; ++s) {
            const Vector psi = sample_haar_state(c.spec.register_dim(), rng);
            all_unit &= std::abs(state_fidelity_with(u, c.spec, anc, psi, c.target) - 1.0) < 1e-9;
        }
        CHECK(all_unit);
        CHECK(avg_fidelity(c.spec, c.lambda, anc, c.target) >= 0.999);
    }
}

TEST_CASE("perturb_study statistics and reproducibility") {
    Preset tof = toffoli_preset();
    PerturbSpec p;
    p.epsilon = 0.0;
    p.num_draws = 5;
    p.rng_seed = 9;
    PerturbStats zero = perturb_study(tof.spec, tof.target, tof.lambda, tof.ancilla(), p);
    const double f0 = avg_fidelity(tof.spec, tof.lambda, tof.ancilla(), tof.target);
    CHECK(zero.mean == doctest::Approx(f0));
    CHECK(zero.min == doctest::Approx(f0));
    CHECK(zero.max == doctest::Approx(f0));

    p.epsilon = 0.1;
    PerturbStats a = perturb_study(tof.spec, tof.target, tof.lambda, tof.ancilla(), p);
    PerturbStats b = perturb_study(tof.spec, tof.target, tof.lambda, tof.ancilla(), p);
    CHECK(a.fbar_draws == b.fbar_draws);
    CHECK(a.min <= a.mean);
    CHECK(a.mean <= a.max);
    CHECK(a.fbar_draws.size() == 5);

    // restricting the perturbed groups leaves the others untouched
    PerturbSpec only_one = p;
    only_one.perturb_groups = {"h_z_4"};
    PerturbStats c = perturb_study(tof.spec, tof.target, tof.lambda, tof.ancilla(), only_one);
    CHECK(c.min > 0.999); // a lone weak field barely moves the gate
    CHECK_THROWS_AS([&] {
        PerturbSpec bad = p;
        bad.perturb_groups = {"nope"};
        return perturb_study(tof.spec, tof.target, tof.lambda, tof.ancilla(), bad);
    }(),
                    std::invalid_argument);
}

TEST_CASE("sweep substitutes the named group and fixes probe states") {
    Preset tof = toffoli_preset();
    const std::vector<double> grid = {15.06};
    auto rows = sweep(tof.spec, tof.target, tof.lambda, tof.ancilla(), "J_xx_34", grid, 3, 11);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].f_bar >= 0.9998 - 5e-4);
    CHECK(rows[0].f_psi.size() == 3);
    for (double f : rows[0].f_psi) CHECK(f >= 0.999);

    CHECK_THROWS_AS(sweep(tof.spec, tof.target, tof.lambda, tof.ancilla(), "nope", grid, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep(tof.spec, tof.target, tof.lambda, tof.ancilla(), "J_xx_34", {}, 1, 1),
                    std::invalid_argument);
}

TEST_SUITE_END();
