#pragma once

#include "transformloc/config.hpp"
#include "transformloc/metrics.hpp"
#include "transformloc/simulator.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace transformloc {

inline constexpr std::string_view kTraceHeader =
    "t,entity_kind,entity_id,true_x,true_y,est_x,est_y,cov_xx,cov_xy,cov_yy,group_id,observed_by";

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

/// One row per entity per record: AMAV rows first, then BMAV rows.
/// observed_by lists AMAV ids separated by ';'.
void write_trace_csv(std::ostream &out, const SimTrace &trace);
void write_trace_csv(const std::filesystem::path &path, const SimTrace &trace);

/// Rebuilds the per-step positions, beliefs and groups from a trace file.
/// Headings are not stored and come back as zero. config is attached as-is.
SimTrace read_trace_csv(std::istream &in, const ScenarioConfig &config);
SimTrace read_trace_csv(const std::filesystem::path &path, const ScenarioConfig &config);

/// Keys: strategy, seed, ate_mean, ate_p50, ate_p95, ate_cdf, success, xi_T.
Json metrics_to_json(const MetricsSummary &m, Strategy strategy, std::uint64_t seed);

/// "eps_tau" key of the success map, e.g. "0.05_60".
std::string success_key(double accuracy, int time_limit);

/// Writes text and throws std::runtime_error naming the path on failure.
void write_text_file(const std::filesystem::path &path, std::string_view text);
std::string read_text_file(const std::filesystem::path &path);

}  // namespace transformloc
