// Command-line runner for compliance-bandit experiments.
//
//   cbandit_cli run    --config exp.json [--out DIR] [--serial] [--emit-curves]
//   cbandit_cli sweep  --configs DIR [--out DIR] [--serial] [--emit-curves]
//   cbandit_cli ingest --csv ist.csv --map aspirin.json --out aspirin.csv
//
// Thread count comes from CBANDIT_THREADS (default: hardware concurrency).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbandit/experiment.hpp"
#include "cbandit/ist_data.hpp"

namespace fs = std::filesystem;
using namespace cbandit;

namespace {

struct Common {
    std::string out;
    bool serial = false;
    bool emit_curves = false;
};

fs::path output_dir(const ExperimentConfig& c, const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (!c.output.empty()) return c.output;
    return fs::path("results") / c.name;
}

int cmd_run(const std::string& config_path, const Common& opt) {
    const ExperimentConfig c = load_config(config_path);
    const auto result = run_experiment(c, {0, opt.serial});
    const fs::path dir = output_dir(c, opt.out);
    write_outputs(result, dir, opt.emit_curves || c.emit_curves);
    std::cout << summary_json(result.summary).dump(2) << '\n';
    std::cerr << "wrote " << dir.string() << '\n';
    return 0;
}

int cmd_sweep(const std::string& config_dir, const Common& opt) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(config_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ConfigError("no .json configs in '" + config_dir + "'");

    // Parse everything first so a bad config fails before any run starts.
    std::vector<ExperimentConfig> configs;
    for (const auto& f : files) {
        auto c = load_config(f);
        prepare(c);
        configs.push_back(std::move(c));
    }
    const fs::path root = opt.out.empty() ? fs::path("results") : fs::path(opt.out);

    std::vector<ExperimentResult> results;
    results.reserve(configs.size());
    nlohmann::ordered_json index = nlohmann::ordered_json::array();
    for (const auto& c : configs) {
        std::cerr << "running " << c.name << " (" << algorithm_label(c.algorithm) << ", "
                  << environment_label(c.environment) << ")\n";
        results.push_back(run_experiment(c, {0, opt.serial}));
        write_outputs(results.back(), root / c.name, opt.emit_curves || c.emit_curves);
        index.push_back(summary_json(results.back().summary));
    }

    std::map<std::string, std::vector<const ExperimentResult*>> pools;
    std::map<std::string, std::uint64_t> pool_seed;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (configs[i].pool.empty()) continue;
        pools[configs[i].pool].push_back(&results[i]);
        pool_seed.emplace(configs[i].pool, configs[i].seed);
    }
    nlohmann::ordered_json pooled = nlohmann::ordered_json::array();
    for (const auto& [name, parts] : pools) pooled.push_back(pooled_summary(name, parts, pool_seed[name]));

    nlohmann::ordered_json sweep;
    sweep["schema_version"] = kOutputSchemaVersion;
    sweep["experiments"] = index;
    sweep["pooled"] = pooled;
    write_text(root / "sweep_summary.json", sweep.dump(2) + "\n");
    std::cout << sweep.dump(2) << '\n';
    return 0;
}

int cmd_ingest(const std::string& csv_path, const std::string& map_path, const std::string& out_path) {
    const ColumnMap map = load_column_map(map_path);
    const ParseResult parsed = parse_trial_csv(csv_path, map);
    const TrialTable table(map.trial, parsed.records);  // rejects empty arms
    std::ostringstream buf;
    write_canonical_csv(buf, parsed.records);
    write_text(out_path, buf.str());

    nlohmann::ordered_json report;
    report["trial"] = std::string(to_string(map.trial));
    report["rows_read"] = parsed.rows_read;
    report["records"] = parsed.records.size();
    report["excluded_missing_outcome"] = parsed.excluded_missing_outcome;
    report["excluded_missing_other"] = parsed.excluded_missing_other;
    nlohmann::ordered_json groups = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < table.arm_count(); ++a)
        groups.push_back({{"arm", a}, {"patients", table.group(a).size()}, {"survival", table.group_mean(a)}});
    report["groups"] = groups;
    std::cout << report.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compliance-aware bandit experiments"};
    app.require_subcommand(1);

    Common common;
    std::string config_path, config_dir, csv_path, map_path, ingest_out;

    auto* run = app.add_subcommand("run", "Run one experiment config");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", common.out, "Output directory (default: config 'output' or results/<name>)");
    run->add_flag("--serial", common.serial, "Run replicates sequentially");
    run->add_flag("--emit-curves", common.emit_curves, "Also write curves.csv");

    auto* sweep = app.add_subcommand("sweep", "Run every *.json config in a directory");
    sweep->add_option("--configs", config_dir, "Directory of configs")->required()->check(CLI::ExistingDirectory);
    sweep->add_option("--out", common.out, "Output root (default: results)");
    sweep->add_flag("--serial", common.serial, "Run replicates sequentially");
    sweep->add_flag("--emit-curves", common.emit_curves, "Also write curves.csv");

    auto* ingest = app.add_subcommand("ingest", "Validate a trial CSV and export canonical records");
    ingest->add_option("--csv", csv_path, "Raw trial CSV")->required()->check(CLI::ExistingFile);
    ingest->add_option("--map", map_path, "Column mapping (JSON)")->required()->check(CLI::ExistingFile);
    ingest->add_option("--out", ingest_out, "Canonical CSV to write")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, common);
        if (*sweep) return cmd_sweep(config_dir, common);
        if (*ingest) return cmd_ingest(csv_path, map_path, ingest_out);
    } catch (const TrialParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
