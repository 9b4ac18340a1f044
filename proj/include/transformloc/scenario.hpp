#pragma once

#include "transformloc/navigation.hpp"
#include "transformloc/sensing.hpp"
#include "transformloc/world.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace transformloc {

enum class Strategy { transformloc, dead_reckoning, station, greedy };

std::string_view to_string(Strategy s);
/// Throws std::invalid_argument on an unknown name.
Strategy parse_strategy(std::string_view name);

/// Raised for malformed or inconsistent scenarios. field() names the offending
/// key path, e.g. "amav.count".
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &message);
    const std::string &field() const { return field_; }

   private:
    std::string field_;
};

/// The 15 unicycle primitives u in {0, 1, 3}, omega in {0, +-1, +-3}; hover first.
std::vector<MotionPrimitive> default_primitives();

struct ScenarioConfig {
    Arena arena;
    double dt = 1.0;
    /// Command interval in steps; also the planner's lookahead depth.
    int delta = 5;
    /// Number of simulated steps T.
    int horizon = 420;
    std::uint64_t seed = 1;
    Strategy strategy = Strategy::transformloc;

    int amav_count = 5;
    /// Empty means a uniform grid facing the arena centre.
    std::vector<Pose> amav_starts;
    std::vector<MotionPrimitive> primitives = default_primitives();
    /// Optional Gaussian error on the AMAV's own pose (m and rad per axis).
    double amav_position_noise = 0.0;
    double amav_heading_noise = 0.0;

    int bmav_count = 20;
    /// Empty means random starts inside the central start_region fraction of
    /// the arena, drawn from the seed.
    std::vector<Vec2> bmav_starts;
    /// Empty means boundary points radially outward from the arena centre,
    /// inset by destination_margin.
    std::vector<Vec2> bmav_destinations;
    double start_region = 0.5;
    double destination_margin = 0.5;
    /// After reaching its destination a BMAV keeps flying to random waypoints.
    bool wander = true;

    FovParams fov;
    NoiseModel motion_noise{0.20, 0.0};
    NoiseModel range_noise{0.10, 0.0};
    NoiseModel bearing_noise{0.05, 0.0};
    /// Draw the motion noise once per command interval instead of every step.
    bool noise_per_interval = false;

    NavParams nav;
    std::optional<std::size_t> beam_width = 50;
    /// Planner cost summed over every lookahead level instead of the leaf only.
    bool accumulated_cost = true;
    double initial_variance = 1e-4;

    std::vector<double> success_accuracies{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    std::vector<int> success_time_limits{60, 80, 100, 120, 140, 160, 180, 200};
    double cdf_max = 5.0;
    double cdf_step = 0.05;

    bool operator==(const ScenarioConfig &) const = default;
};

/// Checks every invariant. Throws ConfigError naming the first bad field.
void validate(const ScenarioConfig &config);

/// Copy with generated AMAV starts, BMAV starts and destinations filled in.
/// Explicit values are kept. Deterministic in config.seed.
ScenarioConfig resolve(const ScenarioConfig &config);

/// Random streams of one run. Values are part of the trace format: changing
/// them changes every trace.
enum class RngStream : std::uint64_t { layout = 1, motion = 2, sensing = 3, waypoints = 4, amav_pose = 5 };

/// Independent stream of a run seeded with `seed`.
Rng derive_rng(std::uint64_t seed, RngStream stream);

/// Grid layout used for default AMAV starts and the station baseline.
std::vector<Pose> grid_placement(const Arena &arena, int count);

/// Boundary destination radially outward from the arena centre through start.
Vec2 edge_destination(const Arena &arena, const Vec2 &start, double margin);

}  // namespace transformloc
