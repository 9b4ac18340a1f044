// transformloc: run scenarios, batches and metric aggregation from the shell.

#include "transformloc/batch.hpp"
#include "transformloc/config.hpp"
#include "transformloc/metrics.hpp"
#include "transformloc/simulator.hpp"
#include "transformloc/trace_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace transformloc;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string &s) {
    std::vector<std::uint64_t> out;
    for (const auto &item : split_list(s)) {
        const auto dash = item.find('-');
        if (dash != std::string::npos && dash > 0) {
            const auto lo = std::stoull(item.substr(0, dash));
            const auto hi = std::stoull(item.substr(dash + 1));
            for (auto k = lo; k <= hi; ++k) out.push_back(k);
        } else {
            out.push_back(std::stoull(item));
        }
    }
    return out;
}

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"TransformLoc heterogeneous-swarm localization simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out;
    std::string strategy_arg;
    std::string seeds_arg;
    std::string trace_path;
    std::string manifest_path;
    std::uint64_t seed = 0;
    std::size_t beam_width = 0;
    unsigned jobs = 1;

    auto *run = app.add_subcommand("run", "Run one scenario and write its trace, metrics and resolved config");
    run->add_option("--config", config_path, "Scenario file (JSON)")->required();
    auto *run_seed = run->add_option("--seed", seed, "Override the scenario seed");
    auto *run_strategy = run->add_option("--strategy", strategy_arg,
                                         "transformloc | dead_reckoning | station | greedy");
    run->add_option("--out", out, "Output directory")->required();
    auto *run_beam = run->add_option("--beam-width", beam_width, "Planner beam width");

    auto *batch = app.add_subcommand("batch", "Run every (strategy, seed) pair and aggregate");
    batch->add_option("--config", config_path, "Scenario file (JSON)");
    batch->add_option("--manifest", manifest_path, "Manifest file with config, seeds, strategies, out");
    batch->add_option("--seeds", seeds_arg, "Seeds, e.g. 1,2,3 or 1-10");
    batch->add_option("--strategy", strategy_arg, "Comma-separated strategies");
    batch->add_option("--out", out, "Output directory");
    auto *batch_beam = batch->add_option("--beam-width", beam_width, "Planner beam width");
    batch->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

    auto *metrics = app.add_subcommand("metrics", "Recompute metrics from a trace file");
    metrics->add_option("--trace", trace_path, "Trace CSV")->required();
    metrics->add_option("--config", config_path, "Resolved config written next to the trace")->required();
    auto *metrics_seed = metrics->add_option("--seed", seed, "Seed recorded in the output");
    metrics->add_option("--out", out, "Output JSON file (stdout when omitted)");

    auto *compare = app.add_subcommand("compare", "Aggregate every metrics_*.json in a directory");
    compare->add_option("--out", out, "Directory holding metrics files; aggregate.json is written there")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*run) {
            ScenarioConfig cfg = load_config(config_path);
            if (*run_seed) cfg.seed = seed;
            if (*run_strategy) cfg.strategy = parse_strategy(strategy_arg);
            if (*run_beam) cfg.beam_width = beam_width;
            validate(cfg);
            ensure_dir(out);
            const SimTrace trace = run_scenario(cfg);
            const MetricsSummary m = compute_metrics(trace, metrics_options(trace.config));
            const std::string stem = run_stem(cfg.strategy, cfg.seed);
            write_trace_csv(fs::path(out) / ("trace_" + stem + ".csv"), trace);
            write_text_file(fs::path(out) / ("metrics_" + stem + ".json"),
                            metrics_to_json(m, cfg.strategy, cfg.seed).dump(2) + "\n");
            write_text_file(fs::path(out) / ("config_" + stem + ".json"), dump_config(trace.config));
            std::cout << stem << ": ate_mean=" << format_number(m.ate_mean) << " ate_p95=" << format_number(m.ate_p95)
                      << " xi_T=" << format_number(m.xi_T) << "\n";
        } else if (*batch) {
            RunManifest manifest;
            if (!manifest_path.empty()) {
                const Json doc = Json::parse(read_text_file(manifest_path));
                const fs::path base = fs::path(manifest_path).parent_path();
                const auto rel = [&](const std::string &p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
                manifest.config_path = rel(doc.at("config").get<std::string>());
                manifest.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
                for (const auto &s : doc.at("strategies")) manifest.strategies.push_back(parse_strategy(s.get<std::string>()));
                manifest.output_dir = rel(doc.at("out").get<std::string>());
                if (doc.contains("beam_width") && !doc["beam_width"].is_null()) {
                    manifest.beam_width = doc["beam_width"].get<std::size_t>();
                }
            }
            if (!config_path.empty()) manifest.config_path = config_path;
            if (!seeds_arg.empty()) manifest.seeds = parse_seeds(seeds_arg);
            if (!strategy_arg.empty()) {
                manifest.strategies.clear();
                for (const auto &s : split_list(strategy_arg)) manifest.strategies.push_back(parse_strategy(s));
            }
            if (!out.empty()) manifest.output_dir = out;
            if (*batch_beam) manifest.beam_width = beam_width;
            if (manifest.config_path.empty()) throw ConfigError("config", "a scenario file is required");
            const RunManifest done = run_batch(manifest, jobs);
            std::cout << "wrote " << done.emitted.size() << " files to " << done.output_dir.string() << "\n";
            std::cout << read_text_file(done.output_dir / "aggregate.json");
        } else if (*metrics) {
            const ScenarioConfig cfg = load_config(config_path);
            const SimTrace trace = read_trace_csv(fs::path(trace_path), cfg);
            const MetricsSummary m = compute_metrics(trace, metrics_options(cfg));
            const std::string doc = metrics_to_json(m, cfg.strategy, *metrics_seed ? seed : cfg.seed).dump(2) + "\n";
            if (out.empty()) {
                std::cout << doc;
            } else {
                write_text_file(out, doc);
            }
        } else if (*compare) {
            const Json agg = compare_directory(out);
            write_text_file(fs::path(out) / "aggregate.json", agg.dump(2) + "\n");
            std::cout << agg.dump(2) << "\n";
        }
    } catch (const ConfigError &e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
