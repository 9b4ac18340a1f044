#pragma once

#include "transformloc/estimation.hpp"
#include "transformloc/grouping.hpp"
#include "transformloc/scenario.hpp"
#include "transformloc/scheduling.hpp"
#include "transformloc/sensing.hpp"

#include <cstddef>
#include <vector>

namespace transformloc {

struct CorrectionEvent {
    Observation observation;
    double trace_before = 0.0;
    double trace_after = 0.0;
};

/// Snapshot at the end of step t.
struct StepRecord {
    long t = 0;
    std::vector<Pose> amav_poses;
    /// What each AMAV believes its pose to be (equals amav_poses without pose noise).
    std::vector<Pose> amav_pose_estimates;
    std::vector<Vec2> bmav_truth;
    std::vector<Belief> beliefs;
    std::vector<Vec2> bmav_cmds;
    std::vector<CorrectionEvent> corrections;
    /// Voronoi cell of each BMAV for the current interval; empty under dead reckoning.
    std::vector<std::size_t> group_of;
    /// Plans issued at the start of this step, indexed by AMAV; empty otherwise.
    std::vector<Plan> plans;
};

struct SimTrace {
    /// Resolved scenario (explicit starts and destinations).
    ScenarioConfig config;
    std::vector<StepRecord> steps;
};

/// Closed-loop run of config.strategy. Deterministic in config.seed.
/// Throws ConfigError before stepping when the scenario is invalid.
SimTrace run_scenario(const ScenarioConfig &config);

/// AMAVs hold their start poses; corrections happen when BMAVs fly through.
SimTrace run_baseline_station(ScenarioConfig config);

/// One-step lookahead, replanned every step.
SimTrace run_baseline_greedy(ScenarioConfig config);

SimTrace run_dead_reckoning(ScenarioConfig config);

}  // namespace transformloc
