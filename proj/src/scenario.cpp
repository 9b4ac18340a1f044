#include "transformloc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

namespace transformloc {
namespace {

void require(bool ok, const std::string &field, const std::string &message) {
    if (!ok) {
        throw ConfigError(field, message);
    }
}

bool inside(const Arena &arena, double x, double y) { return arena.contains(Vec2(x, y)); }

}  // namespace

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::transformloc:
            return "transformloc";
        case Strategy::dead_reckoning:
            return "dead_reckoning";
        case Strategy::station:
            return "station";
        case Strategy::greedy:
            return "greedy";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::transformloc, Strategy::dead_reckoning, Strategy::station, Strategy::greedy}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw std::invalid_argument("unknown strategy '" + std::string(name) +
                                "' (expected transformloc, dead_reckoning, station or greedy)");
}

ConfigError::ConfigError(std::string field, const std::string &message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

std::vector<MotionPrimitive> default_primitives() {
    std::vector<MotionPrimitive> out;
    for (double u : {0.0, 1.0, 3.0}) {
        for (double omega : {0.0, 1.0, -1.0, 3.0, -3.0}) {
            out.push_back({u, omega});
        }
    }
    return out;
}

Rng derive_rng(std::uint64_t seed, RngStream which) {
    const auto stream = static_cast<std::uint64_t>(which);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

void validate(const ScenarioConfig &c) {
    require(c.arena.length > 0.0 && std::isfinite(c.arena.length), "arena.length", "must be positive");
    require(c.arena.width > 0.0 && std::isfinite(c.arena.width), "arena.width", "must be positive");
    require(c.dt > 0.0, "dt", "must be positive");
    require(c.delta >= 1, "delta", "must be at least 1");
    require(c.horizon >= c.delta, "horizon", "must be at least delta");

    require(c.amav_count >= 1, "amav.count", "must be at least 1");
    require(c.amav_starts.empty() || std::ssize(c.amav_starts) == c.amav_count, "amav.starts",
            "must list one pose per AMAV");
    for (const Pose &p : c.amav_starts) {
        require(inside(c.arena, p.x1, p.x2), "amav.starts", "start outside the arena");
    }
    require(!c.primitives.empty(), "amav.primitives", "must not be empty");
    require(c.amav_position_noise >= 0.0, "amav.position_noise", "must be non-negative");
    require(c.amav_heading_noise >= 0.0, "amav.heading_noise", "must be non-negative");

    require(c.bmav_count >= 1, "bmav.count", "must be at least 1");
    require(c.bmav_starts.empty() || std::ssize(c.bmav_starts) == c.bmav_count, "bmav.starts",
            "must list one position per BMAV");
    for (const Vec2 &p : c.bmav_starts) {
        require(c.arena.contains(p), "bmav.starts", "start outside the arena");
    }
    require(c.bmav_destinations.empty() || std::ssize(c.bmav_destinations) == c.bmav_count,
            "bmav.destinations", "must list one position per BMAV");
    for (const Vec2 &p : c.bmav_destinations) {
        require(c.arena.contains(p), "bmav.destinations", "destination outside the arena");
    }
    require(c.start_region > 0.0 && c.start_region <= 1.0, "bmav.start_region", "must be in (0, 1]");
    require(c.destination_margin >= 0.0 &&
                2.0 * c.destination_margin < std::min(c.arena.length, c.arena.width),
            "bmav.destination_margin", "must be non-negative and leave room inside the arena");

    require(c.fov.angle > 0.0 && c.fov.angle <= 2.0 * std::numbers::pi, "fov.angle", "must be in (0, 2 pi]");
    require(c.fov.r_max > 0.0, "fov.r_max", "must be positive");

    for (const auto &[name, n] : {std::pair{"noise.motion", c.motion_noise}, std::pair{"noise.range", c.range_noise},
                                  std::pair{"noise.bearing", c.bearing_noise}}) {
        require(n.sigma_fraction >= 0.0, std::string(name) + ".fraction", "must be non-negative");
        require(n.floor >= 0.0, std::string(name) + ".floor", "must be non-negative");
    }

    require(c.nav.k_att > 0.0, "navigation.k_att", "must be positive");
    require(c.nav.k_rep > 0.0, "navigation.k_rep", "must be positive");
    require(c.nav.rep_radius > 0.0, "navigation.rep_radius", "must be positive");
    require(c.nav.v_max > 0.0, "navigation.v_max", "must be positive");
    require(c.nav.arrive_radius > 0.0, "navigation.arrive_radius", "must be positive");

    require(!c.beam_width || *c.beam_width >= 1, "planner.beam_width", "must be at least 1 or null");
    require(c.initial_variance > 0.0, "initial_variance", "must be positive");

    for (double eps : c.success_accuracies) {
        require(eps > 0.0, "metrics.accuracies", "must be positive");
    }
    for (int tau : c.success_time_limits) {
        require(tau > 0, "metrics.time_limits", "must be positive");
    }
    require(c.cdf_step > 0.0, "metrics.cdf_step", "must be positive");
    require(c.cdf_max > 0.0, "metrics.cdf_max", "must be positive");
}

std::vector<Pose> grid_placement(const Arena &arena, int count) {
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    const int rows = (count + cols - 1) / cols;
    const Vec2 centre(0.5 * arena.length, 0.5 * arena.width);
    std::vector<Pose> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const int r = k / cols;
        const int c = k % cols;
        const Vec2 p((c + 0.5) * arena.length / cols, (r + 0.5) * arena.width / rows);
        const Vec2 to_centre = centre - p;
        const double heading = to_centre.norm() > 1e-9 ? std::atan2(to_centre.y(), to_centre.x()) : 0.0;
        out.push_back({p.x(), p.y(), wrap_angle(heading)});
    }
    return out;
}

Vec2 edge_destination(const Arena &arena, const Vec2 &start, double margin) {
    const Vec2 centre(0.5 * arena.length, 0.5 * arena.width);
    Vec2 dir = start - centre;
    if (dir.norm() < 1e-9) {
        dir = Vec2(1.0, 0.0);
    }
    const Vec2 lo(margin, margin);
    const Vec2 hi(arena.length - margin, arena.width - margin);
    double t = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 2; ++axis) {
        if (dir[axis] > 0.0) {
            t = std::min(t, (hi[axis] - centre[axis]) / dir[axis]);
        } else if (dir[axis] < 0.0) {
            t = std::min(t, (lo[axis] - centre[axis]) / dir[axis]);
        }
    }
    return arena.clamp(centre + t * dir);
}

ScenarioConfig resolve(const ScenarioConfig &config) {
    validate(config);
    ScenarioConfig out = config;
    if (out.amav_starts.empty()) {
        out.amav_starts = grid_placement(out.arena, out.amav_count);
    }
    Rng rng = derive_rng(config.seed, RngStream::layout);
    if (out.bmav_starts.empty()) {
        const double f = out.start_region;
        std::uniform_real_distribution<double> ux(0.5 * (1.0 - f) * out.arena.length,
                                                  0.5 * (1.0 + f) * out.arena.length);
        std::uniform_real_distribution<double> uy(0.5 * (1.0 - f) * out.arena.width,
                                                  0.5 * (1.0 + f) * out.arena.width);
        for (int i = 0; i < out.bmav_count; ++i) {
            const double x = ux(rng);
            const double y = uy(rng);
            out.bmav_starts.emplace_back(x, y);
        }
    }
    if (out.bmav_destinations.empty()) {
        for (const Vec2 &s : out.bmav_starts) {
            out.bmav_destinations.push_back(edge_destination(out.arena, s, out.destination_margin));
        }
    }
    return out;
}

}  // namespace transformloc
