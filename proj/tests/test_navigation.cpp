#include "transformloc/navigation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace transformloc;

namespace {

const Arena kLarge{40, 40};

Vec2 cmd(const Vec2 &est, const Vec2 &dest, std::vector<Vec2> neighbours = {}, const Arena &arena = kLarge,
         const NavParams &p = {}) {
    return plan_bmav_cmd(est, dest, neighbours, arena, p);
}

}  // namespace

TEST(PlanBmavCmd, ArrivedIsZero) { EXPECT_EQ(cmd({20, 20}, {20, 20}), Vec2::Zero()); }

TEST(PlanBmavCmd, FarGoalSaturates) {
    const Vec2 v = cmd({15, 20}, {25, 20});
    EXPECT_DOUBLE_EQ(v.norm(), 0.5);
    EXPECT_GT(v.x(), 0.0);
}

TEST(PlanBmavCmd, NeighbourOnLineDeflects) {
    const Vec2 v = cmd({20, 20}, {25, 20}, {{20.3, 20.01}});
    EXPECT_GT(std::abs(v.y()), 1e-6);
}

TEST(PlanBmavCmd, ProportionalBelowClamp) {
    const NavParams p;
    for (double d : {0.1, 0.5, 1.0, 2.0}) {
        EXPECT_NEAR(cmd({20, 20}, {20 + d, 20}).norm(), p.k_att * d, 1e-12);
    }
}

TEST(PlanBmavCmd, NeverExceedsVmax) {
    Rng rng(51);
    std::uniform_real_distribution<double> u(0.01, 7.99);
    const Arena arena{8, 8};
    for (int k = 0; k < 2000; ++k) {
        std::vector<Vec2> neighbours;
        for (int n = 0; n < 5; ++n) neighbours.emplace_back(u(rng), u(rng));
        const Vec2 v = cmd({u(rng), u(rng)}, {u(rng), u(rng)}, neighbours, arena);
        EXPECT_LE(v.norm(), 0.5 + 1e-12);
    }
}

TEST(PlanBmavCmd, SlowsDownNearGoal) {
    double last = 0.0;
    for (double d = 0.06; d < 10.0; d += 0.05) {
        const double speed = cmd({20 - d, 20}, {20, 20}).norm();
        EXPECT_GE(speed, last - 1e-12);  // saturated speeds differ only by rounding
        last = speed;
    }
}

TEST(PlanBmavCmd, MirrorSymmetry) {
    const Arena arena{8, 8};
    const Vec2 est(1.0, 0.3);
    const Vec2 dest(6.0, 2.0);
    const std::vector<Vec2> neighbours = {{1.3, 0.5}, {0.8, 0.1}};
    auto mirror = [](const Vec2 &p) { return Vec2(8.0 - p.x(), p.y()); };
    const Vec2 v = cmd(est, dest, neighbours, arena);
    const Vec2 w = cmd(mirror(est), mirror(dest), {mirror(neighbours[0]), mirror(neighbours[1])}, arena);
    EXPECT_NEAR(w.x(), -v.x(), 1e-12);
    EXPECT_NEAR(w.y(), v.y(), 1e-12);
}

TEST(WallRepulsors, Examples) {
    EXPECT_TRUE(wall_repulsors({20, 20}, kLarge, 0.5).empty());
    const auto one = wall_repulsors({0.1, 5}, Arena{8, 8}, 0.5);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], Vec2(0, 5));
    EXPECT_EQ(wall_repulsors({0.1, 0.1}, Arena{8, 8}, 0.5).size(), 2u);
}

TEST(PlanBmavCmd, WallPushesAway) {
    // Goal straight along the wall; repulsion adds an inward component.
    const Vec2 v = cmd({0.1, 4}, {0.1, 7}, {}, Arena{8, 8});
    EXPECT_GT(v.x(), 0.0);
}
