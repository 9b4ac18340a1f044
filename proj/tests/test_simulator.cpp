#include "transformloc/simulator.hpp"

#include "transformloc/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace transformloc;

namespace {

ScenarioConfig small(Strategy s, std::uint64_t seed = 1) {
    ScenarioConfig c;
    c.strategy = s;
    c.seed = seed;
    c.horizon = 60;
    c.bmav_count = 6;
    c.amav_count = 2;
    return c;
}

bool same_beliefs(const SimTrace &a, const SimTrace &b) {
    if (a.steps.size() != b.steps.size()) return false;
    for (std::size_t t = 0; t < a.steps.size(); ++t) {
        for (std::size_t i = 0; i < a.steps[t].beliefs.size(); ++i) {
            if (a.steps[t].beliefs[i].mean != b.steps[t].beliefs[i].mean) return false;
            if (a.steps[t].beliefs[i].cov != b.steps[t].beliefs[i].cov) return false;
            if (a.steps[t].bmav_truth[i] != b.steps[t].bmav_truth[i]) return false;
        }
    }
    return true;
}

}  // namespace

TEST(RunScenario, MinimalRun) {
    ScenarioConfig c;
    c.horizon = 1;
    c.delta = 1;
    c.amav_count = 1;
    c.bmav_count = 1;
    const SimTrace trace = run_scenario(c);
    ASSERT_EQ(trace.steps.size(), 1u);
    EXPECT_EQ(trace.steps[0].t, 0);
    EXPECT_EQ(trace.steps[0].beliefs.size(), 1u);
    EXPECT_EQ(trace.steps[0].amav_poses.size(), 1u);
}

TEST(RunScenario, RecordCountAndSchema) {
    for (Strategy s : {Strategy::transformloc, Strategy::station, Strategy::dead_reckoning, Strategy::greedy}) {
        const SimTrace trace = run_scenario(small(s));
        ASSERT_EQ(trace.steps.size(), 60u);
        for (std::size_t t = 0; t < trace.steps.size(); ++t) {
            const StepRecord &r = trace.steps[t];
            EXPECT_EQ(r.t, static_cast<long>(t));
            EXPECT_EQ(r.amav_poses.size(), 2u);
            EXPECT_EQ(r.bmav_truth.size(), 6u);
            EXPECT_EQ(r.beliefs.size(), 6u);
            EXPECT_EQ(r.bmav_cmds.size(), 6u);
            EXPECT_EQ(r.group_of.size(), s == Strategy::dead_reckoning ? 0u : 6u);
        }
    }
}

TEST(RunScenario, InvalidConfigThrowsBeforeStepping) {
    ScenarioConfig c;
    c.delta = 0;
    EXPECT_THROW(run_scenario(c), ConfigError);
    c = ScenarioConfig{};
    c.horizon = 3;
    EXPECT_THROW(run_scenario(c), ConfigError);
}

TEST(RunScenario, DeadReckoningHasNoObservationsAndGrowingTrace) {
    const SimTrace trace = run_dead_reckoning(small(Strategy::transformloc));
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        EXPECT_TRUE(trace.steps[t].corrections.empty());
        if (t == 0) continue;
        for (std::size_t i = 0; i < 6; ++i) {
            EXPECT_GE(uncertainty(trace.steps[t].beliefs[i]), uncertainty(trace.steps[t - 1].beliefs[i]));
        }
    }
}

TEST(RunScenario, Deterministic) {
    for (Strategy s : {Strategy::transformloc, Strategy::greedy, Strategy::station}) {
        const SimTrace a = run_scenario(small(s, 5));
        const SimTrace b = run_scenario(small(s, 5));
        EXPECT_TRUE(same_beliefs(a, b));
        const SimTrace c = run_scenario(small(s, 6));
        EXPECT_FALSE(same_beliefs(a, c));
    }
}

TEST(RunScenario, CorrectionsNeverIncreaseTrace) {
    for (Strategy s : {Strategy::transformloc, Strategy::station, Strategy::greedy}) {
        const SimTrace trace = run_scenario(small(s, 2));
        std::size_t events = 0;
        for (const StepRecord &r : trace.steps) {
            for (const CorrectionEvent &e : r.corrections) {
                EXPECT_LE(e.trace_after, e.trace_before);
                ++events;
            }
        }
        EXPECT_GT(events, 0u) << to_string(s);
    }
}

TEST(RunScenario, PlansIssuedAtIntervalStarts) {
    const SimTrace trace = run_scenario(small(Strategy::transformloc));
    for (const StepRecord &r : trace.steps) {
        EXPECT_EQ(r.plans.empty(), r.t % 5 != 0);
        for (const Plan &p : r.plans) EXPECT_EQ(p.commands.size(), 5u);
    }
    const SimTrace greedy = run_scenario(small(Strategy::greedy));
    for (const StepRecord &r : greedy.steps) {
        ASSERT_EQ(r.plans.size(), 2u);
        EXPECT_EQ(r.plans[0].commands.size(), 1u);
    }
}

TEST(RunScenario, GreedyEqualsTransformLocAtUnitInterval) {
    ScenarioConfig c = small(Strategy::transformloc, 3);
    c.delta = 1;
    const SimTrace tl = run_scenario(c);
    const SimTrace greedy = run_baseline_greedy(c);
    EXPECT_TRUE(same_beliefs(tl, greedy));
}

TEST(RunScenario, StationAmavsHold) {
    const SimTrace trace = run_baseline_station(small(Strategy::transformloc));
    for (const StepRecord &r : trace.steps) EXPECT_EQ(r.amav_poses, trace.config.amav_starts);
}

TEST(RunScenario, BlindStationEqualsDeadReckoning) {
    ScenarioConfig c = small(Strategy::station, 4);
    c.amav_count = 1;
    c.amav_starts = {{0.0, 0.0, -3.0 * std::numbers::pi / 4.0}};
    const SimTrace station = run_scenario(c);
    const SimTrace dr = run_dead_reckoning(c);
    for (const StepRecord &r : station.steps) EXPECT_TRUE(r.corrections.empty());
    EXPECT_TRUE(same_beliefs(station, dr));
}

TEST(RunScenario, StationPassThroughCorrects) {
    ScenarioConfig c = small(Strategy::station);
    c.amav_count = 1;
    c.bmav_count = 1;
    c.amav_starts = {{3.0, 5.0, 0.0}};
    c.bmav_starts = {{2.0, 5.0}};
    c.bmav_destinations = {{10.0, 5.0}};
    c.wander = false;
    const SimTrace trace = run_scenario(c);
    std::size_t decreasing = 0;
    for (const StepRecord &r : trace.steps) {
        for (const CorrectionEvent &e : r.corrections) decreasing += e.trace_after < e.trace_before;
    }
    EXPECT_GE(decreasing, 1u);
}

TEST(RunScenario, StationBeatsDeadReckoningPairedSeeds) {
    double station = 0.0;
    double dr = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ScenarioConfig c;
        c.seed = seed;
        c.horizon = 200;
        station += compute_metrics(run_baseline_station(c), metrics_options(c)).ate_mean;
        dr += compute_metrics(run_dead_reckoning(c), metrics_options(c)).ate_mean;
    }
    EXPECT_LE(station, dr);
}

TEST(RunScenario, StrategyDominanceOverSeeds) {
    int ordered = 0;
    double tl_sum = 0, st_sum = 0, dr_sum = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ScenarioConfig c;
        c.seed = seed;
        c.strategy = Strategy::transformloc;
        const double tl = compute_metrics(run_scenario(c), metrics_options(c)).ate_mean;
        const double st = compute_metrics(run_baseline_station(c), metrics_options(c)).ate_mean;
        const double dr = compute_metrics(run_dead_reckoning(c), metrics_options(c)).ate_mean;
        ordered += tl < st && st < dr;
        tl_sum += tl;
        st_sum += st;
        dr_sum += dr;
    }
    EXPECT_GE(ordered, 8);
    EXPECT_LT(tl_sum, st_sum);
    EXPECT_LT(st_sum, dr_sum);
}

TEST(RunScenario, NonMyopicLeafNoWorseThanGreedyOnSmallInstance) {
    // One AMAV, one BMAV 3.5 m ahead: the full-depth plan scores no worse than
    // the one-step plan extended by hovering.
    const std::vector<MotionPrimitive> prims = {{0, 0}, {1, 0}, {0, 1}};
    PlannerSettings s;
    s.primitives = prims;
    s.delta = 3;
    s.motion_noise = {0.2, 0};
    s.range_noise = {0.1, 0};
    s.bearing_noise = {0.05, 0};
    const std::vector<Belief> group = {{{3.5, 0}, Mat2::Identity() * 0.05}};
    const std::vector<Vec2> cmds = {{0, 0}};
    const Plan deep = plan_amav({0, 0, 0}, group, cmds, s);
    PlannerSettings one = s;
    one.delta = 1;
    Pose pose{0, 0, 0};
    std::vector<Belief> b = group;
    for (int t = 0; t < 3; ++t) {
        pose = step_amav(pose, plan_amav(pose, b, cmds, one).commands.front());
        b[0] = expected_correction(predict(b[0], cmds[0], Mat2::Zero(), 1.0), pose, s.fov, s.range_noise,
                                   s.bearing_noise);
    }
    EXPECT_LE(deep.predicted_cost, total_uncertainty(b));
}

TEST(RunScenario, PerIntervalNoiseRuns) {
    ScenarioConfig c = small(Strategy::transformloc);
    c.noise_per_interval = true;
    const SimTrace a = run_scenario(c);
    const SimTrace b = run_scenario(c);
    EXPECT_TRUE(same_beliefs(a, b));
}

TEST(RunScenario, AmavPoseNoiseKeepsTruthSeparate) {
    ScenarioConfig c = small(Strategy::transformloc);
    c.amav_position_noise = 0.05;
    c.amav_heading_noise = 0.02;
    const SimTrace trace = run_scenario(c);
    EXPECT_NE(trace.steps[10].amav_poses, trace.steps[10].amav_pose_estimates);
}
