#include "transformloc/navigation.hpp"

namespace transformloc {
namespace {

// Gradient of k_rep (1/d - 1/rho)^2 / 2, pointing away from the obstacle.
Vec2 repulsion(const Vec2 &pos, const Vec2 &obstacle, const NavParams &params) {
    const Vec2 away = pos - obstacle;
    const double d = away.norm();
    if (d >= params.rep_radius || d < 1e-9) {
        return Vec2::Zero();
    }
    return params.k_rep * (1.0 / d - 1.0 / params.rep_radius) / (d * d) * (away / d);
}

}  // namespace

std::vector<Vec2> wall_repulsors(const Vec2 &pos, const Arena &arena, double rep_radius) {
    std::vector<Vec2> out;
    if (pos.x() < rep_radius) {
        out.emplace_back(0.0, pos.y());
    }
    if (arena.length - pos.x() < rep_radius) {
        out.emplace_back(arena.length, pos.y());
    }
    if (pos.y() < rep_radius) {
        out.emplace_back(pos.x(), 0.0);
    }
    if (arena.width - pos.y() < rep_radius) {
        out.emplace_back(pos.x(), arena.width);
    }
    return out;
}

Vec2 plan_bmav_cmd(const Vec2 &est_pos, const Vec2 &dest, std::span<const Vec2> neighbor_positions,
                   const Arena &arena, const NavParams &params) {
    const Vec2 to_goal = dest - est_pos;
    if (to_goal.norm() < params.arrive_radius) {
        return Vec2::Zero();
    }
    Vec2 v = params.k_att * to_goal;
    for (const Vec2 &n : neighbor_positions) {
        v += repulsion(est_pos, n, params);
    }
    // An estimate can drift outside the arena; walls act on its projection.
    const Vec2 inside = arena.clamp(est_pos);
    for (const Vec2 &w : wall_repulsors(inside, arena, params.rep_radius)) {
        v += repulsion(inside, w, params);
    }
    const double speed = v.norm();
    if (speed > params.v_max) {
        v *= params.v_max / speed;
    }
    return v;
}

}  // namespace transformloc
