#pragma once

#include "transformloc/config.hpp"
#include "transformloc/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace transformloc {

struct RunManifest {
    std::filesystem::path config_path;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path output_dir;
    std::vector<Strategy> strategies;
    /// Overrides the scenario's beam width when set.
    std::optional<std::size_t> beam_width;
    /// Filled by run_batch, relative to output_dir.
    std::vector<std::string> emitted;
};

/// Seeds non-empty and unique, at least one strategy, unique strategies.
/// Throws ConfigError.
void validate(const RunManifest &manifest);

/// File stems used for one run, e.g. "transformloc_s7".
std::string run_stem(Strategy strategy, std::uint64_t seed);

/// Runs every (strategy, seed) pair, writing trace_<stem>.csv and
/// metrics_<stem>.json, then aggregate.json and manifest.json. Up to `jobs`
/// runs execute concurrently. Returns the manifest with its file index.
RunManifest run_batch(RunManifest manifest, unsigned jobs = 1);

/// Per-strategy averages over a set of metrics documents: mean ATE, CDF and
/// success grid, plus the seeds that went in. Strategies come out in enum
/// order and runs are averaged in ascending seed order.
Json aggregate_metrics(const std::vector<Json> &metrics);

/// Loads every metrics_*.json in a directory (sorted by name) and aggregates.
Json compare_directory(const std::filesystem::path &dir);

}  // namespace transformloc
