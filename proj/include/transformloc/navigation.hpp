#pragma once

#include "transformloc/world.hpp"

#include <span>
#include <vector>

namespace transformloc {

/// Potential-field gains. k_att is chosen so that one command held for a
/// whole interval (delta * dt = 5 s) lands exactly on a nearby goal.
struct NavParams {
    double k_att = 0.2;
    double k_rep = 0.01;
    double rep_radius = 0.5;
    double v_max = 0.5;
    double arrive_radius = 0.05;

    bool operator==(const NavParams &) const = default;
};

/// Nearest point on each wall closer than rep_radius.
std::vector<Vec2> wall_repulsors(const Vec2 &pos, const Arena &arena, double rep_radius);

/// Velocity command from the attractive goal term plus repulsion from
/// neighbours and walls, clamped to v_max. Zero once within arrive_radius.
/// neighbor_positions must not include the BMAV itself.
Vec2 plan_bmav_cmd(const Vec2 &est_pos, const Vec2 &dest, std::span<const Vec2> neighbor_positions,
                   const Arena &arena, const NavParams &params);

}  // namespace transformloc
