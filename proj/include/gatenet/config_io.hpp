// config_io.hpp — JSON config ingestion (strict: unknown keys are rejected),
// preset resolution with dotted-path overrides, and the machine-readable
// output formats: results/trace/liecheck JSON, sweep/perturb CSV. Trace JSON
// is deterministic byte-for-byte given (seed, config).

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gatenet/gates.hpp"
#include "gatenet/liealg.hpp"
#include "gatenet/network.hpp"
#include "gatenet/presets.hpp"
#include "gatenet/trainer.hpp"

namespace gatenet {

using Json = nlohmann::json;

// ---- network spec ----------------------------------------------------------
Json network_to_json(const NetworkSpec& spec);
NetworkSpec network_from_json(const Json& j);

// ---- parameters ------------------------------------------------------------
// {"<group>": value, ..., "eta": e, "xi": x} keyed by tie-group name.
Json lambda_to_json(const NetworkSpec& spec, const ParameterVector& lambda);
ParameterVector lambda_from_json(const NetworkSpec& spec, const Json& j);

// ---- targets ---------------------------------------------------------------
// {"name": "toffoli"|"fredkin"|"sqrt-swap"} or {"file": "gate.json"}.
GateTarget target_from_json(const Json& j);

// ---- trainer configs -------------------------------------------------------
TrainConfig train_config_from_json(const Json& j); // all keys optional
Json train_config_to_json(const TrainConfig& c);
PerturbSpec perturb_spec_from_json(const Json& j);

// ---- experiment document ----------------------------------------------------
// Either {"preset": "name", ...} with optional n/alpha/eta/xi/lambda
// overrides, or {"network": {...}, "lambda": {...}, "target": {...}}.
// Optional sections: train, perturb, sweep, units.
struct Experiment {
    NetworkSpec spec;
    ParameterVector lambda;
    GateTarget target;
    Json document; // fully resolved (preset expanded), as echoed into reports
};
Experiment resolve_experiment(const Json& doc);

// Applies "a.b.c=value" onto a JSON document; value parsed as JSON when
// possible, else taken as a string.
void apply_override(Json& doc, const std::string& assignment);

// ---- outputs ----------------------------------------------------------------
Json trace_to_json(const NetworkSpec& spec, const TrainTrace& trace);
std::string trace_checkpoints_csv(const TrainTrace& trace);
Json liecheck_to_json(const LieCheckReport& rep);
Json bottom_up_to_json(const BottomUpResult& res);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string perturb_csv(const PerturbStats& stats);

// Write via temp file + rename so readers never see partial output.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace gatenet
