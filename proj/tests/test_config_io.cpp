#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "gatenet/config_io.hpp"

using namespace gatenet;

TEST_SUITE_BEGIN("config_io");

TEST_CASE("network JSON round trip") {
    Preset tof = toffoli_preset();
    Json j = network_to_json(tof.spec);
    NetworkSpec back = network_from_json(j);
    CHECK(back.num_qubits() == tof.spec.num_qubits());
    CHECK(back.groups() == tof.spec.groups());
    CHECK(back.couplings().size() == tof.spec.couplings().size());
    CHECK(back.ancilla_state_trainable());
    CHECK(network_to_json(back) == j);

    Preset rem = remote_sqswap_preset();
    Json jr = network_to_json(rem.spec);
    NetworkSpec back_r = network_from_json(jr);
    CHECK(max_abs(back_r.fixed_ancilla_state().amplitudes -
                  rem.spec.fixed_ancilla_state().amplitudes) < 1e-15);
}

TEST_CASE("network parser rejects unknown keys and bad values") {
    Json good = network_to_json(toffoli_preset().spec);
    Json bad = good;
    bad["coupling_strength"] = 1.0;
    CHECK_THROWS_WITH_AS(network_from_json(bad), doctest::Contains("unknown key"),
                         std::invalid_argument);

    bad = good;
    bad["couplings"][0]["axes"] = "q";
    CHECK_THROWS_AS(network_from_json(bad), std::invalid_argument);

    bad = good;
    bad["couplings"][0]["typo"] = 1;
    CHECK_THROWS_AS(network_from_json(bad), std::invalid_argument);
}

TEST_CASE("lambda JSON round trip keeps group order") {
    Preset tof = toffoli_preset();
    Json j = lambda_to_json(tof.spec, tof.lambda);
    CHECK(j.at("J_xx_34").get<double>() == doctest::Approx(15.06));
    CHECK(j.at("eta").get<double>() == doctest::Approx(0.8182));
    ParameterVector back = lambda_from_json(tof.spec, j);
    CHECK(back.values == tof.lambda.values);
    CHECK_THROWS_AS(lambda_from_json(tof.spec, Json{{"nope", 1.0}}), std::invalid_argument);
}

TEST_CASE("experiment resolution from a preset with overrides") {
    Json doc;
    doc["preset"] = "toffoli";
    doc["xi"] = 0.0;
    Experiment exp = resolve_experiment(doc);
    CHECK(exp.lambda.values.back() == 0.0);
    CHECK(exp.target.name == "toffoli");
    CHECK(exp.document.at("lambda").at("xi").get<double>() == 0.0);

    Json rem;
    rem["preset"] = "remote-sqswap";
    rem["n"] = 2;
    rem["alpha"] = 1.0;
    Experiment exp2 = resolve_experiment(rem);
    CHECK(exp2.lambda.values[2] == doctest::Approx(1.0 + M_PI)); // J_23 = alpha + pi for even n

    Json bad;
    bad["preset"] = "toffoli";
    bad["n"] = 1;
    CHECK_THROWS_AS(resolve_experiment(bad), std::invalid_argument);
    CHECK_THROWS_AS(resolve_experiment(Json::object()), std::invalid_argument);
}

TEST_CASE("experiment resolution from an explicit network document") {
    Json doc;
    doc["network"] = network_to_json(direct_sqswap_preset().spec);
    doc["target"] = Json{{"name", "sqrt-swap"}};
    doc["lambda"] = Json{{"J_14", M_PI / 2.0}};
    Experiment exp = resolve_experiment(doc);
    CHECK(exp.lambda.values[0] == doctest::Approx(M_PI / 2.0));
    CHECK(exp.target.name == "sqrt-swap");

    doc.erase("target");
    CHECK_THROWS_AS(resolve_experiment(doc), std::invalid_argument);
}

TEST_CASE("apply_override walks dotted paths and parses values") {
    Json doc = Json::object();
    apply_override(doc, "xi=0.25");
    apply_override(doc, "lambda.J_xx_34=15");
    apply_override(doc, "train.seed=7");
    apply_override(doc, "note=hello");
    CHECK(doc.at("xi").get<double>() == 0.25);
    CHECK(doc.at("lambda").at("J_xx_34").get<double>() == 15.0);
    CHECK(doc.at("train").at("seed").get<int>() == 7);
    CHECK(doc.at("note").get<std::string>() == "hello");
    CHECK_THROWS_AS(apply_override(doc, "novalue"), std::invalid_argument);
}

TEST_CASE("train config defaults and strictness") {
    TrainConfig c = train_config_from_json(Json::object());
    CHECK(c.eps0 == 0.3);
    CHECK(c.steps_per_state == 1);
    CHECK(c.switch_threshold == 0.95);
    CHECK(c.checkpoint_every == 50);
    CHECK(c.init_low == -10.0);
    CHECK(c.init_high == 10.0);

    TrainConfig c2 = train_config_from_json(Json{{"eps0", 0.7}, {"num_restarts", 3}});
    CHECK(c2.eps0 == 0.7);
    CHECK(c2.num_restarts == 3);
    CHECK_THROWS_AS(train_config_from_json(Json{{"epsilon0", 0.7}}), std::invalid_argument);

    PerturbSpec p = perturb_spec_from_json(Json{{"epsilon", 0.04}, {"draws", 100}, {"seed", 5}});
    CHECK(p.epsilon == 0.04);
    CHECK(p.num_draws == 100);
    CHECK(p.rng_seed == 5);
}

TEST_CASE("trace JSON is deterministic and omits wall time") {
    Preset tof = toffoli_preset();
    TrainTrace trace;
    trace.restart_index = 2;
    trace.final_lambda = tof.lambda;
    trace.final_fbar = 0.5;
    trace.wall_seconds = 1.23;
    trace.sgd_iterations.push_back({1, 0.3, 42, 0.1, 0.2});
    trace.sgd_checkpoints.push_back({0, 0.4});
    const Json a = trace_to_json(tof.spec, trace);
    trace.wall_seconds = 99.0; // must not affect the export
    const Json b = trace_to_json(tof.spec, trace);
    CHECK(a.dump() == b.dump());
    CHECK(a.find("wall_seconds") == a.end());
    CHECK(a.at("sgd_iterations")[0].at("state_seed").get<std::uint64_t>() == 42);
}

TEST_CASE("bottom_up report JSON carries the per-step log") {
    Preset tof = toffoli_preset();
    NetworkSpec base = tof.spec.without_group("h_x_3");
    TermGroup candidate{"h_x_3", {}, {FieldTerm{2, Axis::X, "h_x_3", 1.0}}};
    BottomUpResult res = bottom_up(base, {candidate}, tof.target);
    Json j = bottom_up_to_json(res);
    CHECK(j.at("success").get<bool>());
    REQUIRE(j.at("steps").size() == 2);
    CHECK_FALSE(j.at("steps")[0].at("pass").get<bool>());
    CHECK(j.at("steps")[1].at("group").get<std::string>() == "h_x_3");
    CHECK(j.at("steps")[1].at("pass").get<bool>());
}

TEST_CASE("csv writers") {
    std::vector<SweepRow> rows = {{0.5, 0.25, {0.1, 0.2}}, {1.0, 0.75, {0.3, 0.4}}};
    const std::string csv = sweep_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == "param_value,f_bar,f_psi_1,f_psi_2");
    CHECK(csv.find("\n0.5,0.25,0.1,0.2\n") != std::string::npos);

    PerturbStats stats;
    stats.fbar_draws = {0.9, 0.8};
    const std::string pcsv = perturb_csv(stats);
    CHECK(pcsv == "draw,f_bar\n0,0.9\n1,0.8\n");
}

TEST_CASE("atomic_write_file replaces content wholesale") {
    const std::string path = "test_atomic_tmp.txt";
    atomic_write_file(path, "first");
    atomic_write_file(path, "second");
    std::ifstream in(path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "second");
    std::remove(path.c_str());
}

TEST_SUITE_END();
