#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "credal/errors.hpp"

namespace credal {

/// Insertion-ordered JSON so serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

/// A validated experiment description. `params` is the full scenario object
/// (including "kind"); unknown keys are rejected at load time and every
/// vector passes its domain-type invariants before a Scenario is returned.
struct Scenario {
    std::string kind;
    Json params;
};

/// Parses and fully validates a scenario file. Parse failures carry the
/// line/column from the JSON parser; validation failures name the offending
/// key and constraint (domain errors keep their own types, e.g. a delta
/// outside (0, 1/2) surfaces as ParameterError).
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const Json& j);

struct RunResult {
    bool pass = false;
    Json report;
    std::string trace_csv;
};

/// Dispatches the scenario to the matching module and assembles the report
/// and CSV trace in memory. Identical scenario content (including seed)
/// produces byte-identical results.
RunResult run_scenario(const Scenario& s);

/// Writes trace.csv, report.json and metadata.json (timestamps live only in
/// the metadata file). Partial outputs are removed if any write fails.
void write_run_outputs(const RunResult& r, const std::filesystem::path& out_dir);

/// FNV-1a-64 hash of the canonical scenario serialization, for provenance.
std::string scenario_hash(const Json& params);

}  // namespace credal
