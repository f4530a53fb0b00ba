#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credal/scenario.hpp"
#include "credal/version.hpp"

namespace {

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir;
    std::optional<long> seed;
    std::optional<long> max_iter;
    std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_out) {
    cmd->add_option("--scenario", opts.scenario_path, "Scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    auto* out = cmd->add_option("--out", opts.out_dir, "Output directory for trace.csv / report.json");
    if (needs_out) out->required();
    cmd->add_option("--seed", opts.seed, "Override the scenario seed");
    cmd->add_option("--max-iter", opts.max_iter, "Override the scenario iteration budget");
    cmd->add_option("--tol", opts.tol, "Override the scenario tolerance");
}

credal::Scenario load_with_overrides(const CommonOpts& opts) {
    credal::Json raw;
    {
        // Read once so overrides are applied before validation.
        std::ifstream in(opts.scenario_path);
        if (!in) throw credal::ScenarioError("cannot open scenario file '" + opts.scenario_path + "'");
        try {
            raw = credal::Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw credal::ScenarioError(std::string("scenario parse error: ") + e.what());
        }
    }
    if (raw.is_object()) {
        if (opts.seed) raw["seed"] = *opts.seed;
        if (opts.max_iter) raw["max_iter"] = *opts.max_iter;
        if (opts.tol) raw["tol"] = *opts.tol;
    }
    return credal::parse_scenario(raw);
}

int run_kind(const std::string& kind, const CommonOpts& opts) {
    const credal::Scenario scenario = load_with_overrides(opts);
    if (scenario.kind != kind) {
        throw credal::ScenarioError("scenario kind '" + scenario.kind +
                                    "' does not match subcommand '" + kind + "'");
    }
    const credal::RunResult result = credal::run_scenario(scenario);
    credal::write_run_outputs(result, opts.out_dir);
    std::printf("%s: %s (report: %s)\n", kind.c_str(), result.pass ? "pass" : "FAIL",
                (std::filesystem::path(opts.out_dir) / "report.json").string().c_str());
    return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Credal-set update experiments: orbits, contraction diagnostics, envelopes"};
    app.set_version_flag("--version", credal::kVersion);
    app.require_subcommand(1);

    const char* kinds[] = {"iterate",  "contract", "psi",       "counterexample",
                           "sandwich", "gaussian", "uniqueness"};
    struct SubEntry {
        std::string kind;
        CommonOpts opts;
        CLI::App* cmd = nullptr;
    };
    std::vector<SubEntry> subs;
    subs.reserve(8);
    for (const char* kind : kinds) {
        SubEntry entry;
        entry.kind = kind;
        subs.push_back(std::move(entry));
    }
    for (SubEntry& entry : subs) {
        entry.cmd = app.add_subcommand(entry.kind, "Run a '" + entry.kind + "' scenario");
        add_common(entry.cmd, entry.opts, /*needs_out=*/true);
    }

    CommonOpts validate_opts;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Load and validate a scenario without running it");
    add_common(validate_cmd, validate_opts, /*needs_out=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            const credal::Scenario s = load_with_overrides(validate_opts);
            std::printf("valid: kind=%s hash=%s\n", s.kind.c_str(),
                        credal::scenario_hash(s.params).c_str());
            return 0;
        }
        for (const SubEntry& entry : subs) {
            if (entry.cmd->parsed()) return run_kind(entry.kind, entry.opts);
        }
    } catch (const credal::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
