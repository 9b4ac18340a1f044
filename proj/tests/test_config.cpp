#include "transformloc/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace transformloc;

namespace {

std::string field_of(const std::string &text) {
    try {
        parse_config(text);
    } catch (const ConfigError &e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST(LoadConfig, MinimalGetsDefaults) {
    const ScenarioConfig c = parse_config(R"({"amav": {"count": 1}, "bmav": {"count": 1}})");
    EXPECT_EQ(c.amav_count, 1);
    EXPECT_EQ(c.bmav_count, 1);
    EXPECT_EQ(c.delta, 5);
    EXPECT_EQ(c.horizon, 420);
    EXPECT_EQ(c.dt, 1.0);
    EXPECT_EQ(c.nav.v_max, 0.5);
    EXPECT_NEAR(c.fov.angle, 2.0 * std::numbers::pi / 3.0, 1e-15);
    EXPECT_EQ(c.fov.r_max, 1.0);
    EXPECT_EQ(c.primitives.size(), 15u);
    EXPECT_EQ(c.motion_noise.sigma_fraction, 0.20);
    EXPECT_EQ(c.range_noise.sigma_fraction, 0.10);
    EXPECT_EQ(c.bearing_noise.sigma_fraction, 0.05);
}

TEST(LoadConfig, DeltaZeroNamesField) { EXPECT_EQ(field_of(R"({"delta": 0})"), "delta"); }

TEST(LoadConfig, StartOutsideArena) {
    EXPECT_EQ(field_of(R"({"bmav": {"count": 1, "starts": [[-1, 0]]}})"), "bmav.starts");
}

TEST(LoadConfig, UnknownKeysRejected) {
    EXPECT_EQ(field_of(R"({"colour": "red"})"), "colour");
    EXPECT_EQ(field_of(R"({"fov": {"radius": 2}})"), "fov.radius");
}

TEST(LoadConfig, WrongTypeNamesField) { EXPECT_EQ(field_of(R"({"arena": {"length": "big"}})"), "arena.length"); }

TEST(LoadConfig, BadStrategy) { EXPECT_EQ(field_of(R"({"strategy": "teleport"})"), "strategy"); }

TEST(LoadConfig, MissingFile) {
    EXPECT_THROW(load_config("/nonexistent/scenario.json"), ConfigError);
}

TEST(LoadConfig, AngleInDegrees) {
    const ScenarioConfig c = parse_config(R"({"fov": {"angle_deg": 90}})");
    EXPECT_NEAR(c.fov.angle, std::numbers::pi / 2.0, 1e-15);
    EXPECT_EQ(field_of(R"({"fov": {"angle": 1.0, "angle_deg": 90}})"), "fov.angle_deg");
}

TEST(LoadConfig, BeamWidthNullMeansFullTree) {
    EXPECT_FALSE(parse_config(R"({"planner": {"beam_width": null}})").beam_width.has_value());
    EXPECT_EQ(*parse_config(R"({"planner": {"beam_width": 7}})").beam_width, 7u);
}

TEST(LoadConfig, RoundTripDefaults) {
    const ScenarioConfig c;
    EXPECT_EQ(parse_config(dump_config(c)), c);
}

TEST(LoadConfig, RoundTripEverythingSet) {
    ScenarioConfig c;
    c.arena = {9.5, 7.25};
    c.delta = 3;
    c.horizon = 33;
    c.seed = 123456789012345ULL;
    c.strategy = Strategy::greedy;
    c.amav_count = 2;
    c.amav_starts = {{1.0, 2.0, 0.1}, {3.0, 1.0, -2.9}};
    c.primitives = {{0, 0}, {0.7, -0.3}};
    c.amav_position_noise = 0.1;
    c.bmav_count = 2;
    c.bmav_starts = {{4.1, 4.2}, {5.0, 3.3}};
    c.bmav_destinations = {{9.0, 1.0}, {0.5, 0.5}};
    c.wander = false;
    c.fov = {1.234567890123, 0.8};
    c.motion_noise = {0.25, 0.001};
    c.noise_per_interval = true;
    c.nav.k_att = 0.3;
    c.beam_width = std::nullopt;
    c.accumulated_cost = false;
    c.initial_variance = 2e-4;
    c.success_accuracies = {0.1, 0.2};
    c.success_time_limits = {10, 30};
    c.cdf_step = 0.1;
    const ScenarioConfig back = parse_config(dump_config(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(dump_config(back), dump_config(c));
}

TEST(LoadConfig, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "transformloc_config_roundtrip.json";
    ScenarioConfig c;
    c.seed = 99;
    {
        std::ofstream out(path);
        out << dump_config(c);
    }
    EXPECT_EQ(load_config(path), c);
    std::filesystem::remove(path);
}

TEST(Resolve, FillsStartsAndDestinationsInsideArena) {
    ScenarioConfig c;
    const ScenarioConfig r = resolve(c);
    ASSERT_EQ(r.amav_starts.size(), 5u);
    ASSERT_EQ(r.bmav_starts.size(), 20u);
    ASSERT_EQ(r.bmav_destinations.size(), 20u);
    for (const Vec2 &d : r.bmav_destinations) {
        EXPECT_TRUE(c.arena.contains(d));
        const double to_wall = std::min({d.x(), d.y(), c.arena.length - d.x(), c.arena.width - d.y()});
        EXPECT_NEAR(to_wall, c.destination_margin, 1e-9);
    }
    EXPECT_EQ(resolve(c), r);
    c.seed = 2;
    EXPECT_NE(resolve(c).bmav_starts, r.bmav_starts);
}

TEST(Resolve, DestinationRadiallyOutward) {
    const Arena a{10, 10};
    const Vec2 d = edge_destination(a, {6, 5.5}, 0.5);
    EXPECT_NEAR(d.x(), 9.5, 1e-12);
    EXPECT_NEAR(d.y(), 7.25, 1e-12);
}

TEST(Resolve, GridPlacementFacesCentre) {
    const auto poses = grid_placement({10, 10}, 4);
    ASSERT_EQ(poses.size(), 4u);
    EXPECT_EQ(poses[0].position(), Vec2(2.5, 2.5));
    EXPECT_NEAR(poses[0].phi, std::numbers::pi / 4, 1e-12);
}
