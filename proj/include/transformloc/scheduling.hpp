#pragma once

#include "transformloc/estimation.hpp"
#include "transformloc/grouping.hpp"
#include "transformloc/sensing.hpp"
#include "transformloc/world.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace transformloc {

enum class CostMode {
    /// Sum of group traces at depth delta.
    leaf,
    /// Sum of group traces over every level 1..delta.
    accumulated,
};

struct PlannerSettings {
    std::vector<MotionPrimitive> primitives;
    int delta = 5;
    double dt = 1.0;
    FovParams fov;
    NoiseModel motion_noise;
    NoiseModel range_noise;
    NoiseModel bearing_noise;
    /// Multiplies the per-step process noise used in the rollout.
    double process_noise_scale = 1.0;
    /// Children whose pose leaves the arena are dropped.
    std::optional<Arena> arena;
    /// Survivors kept per level; nullopt expands the full tree.
    std::optional<std::size_t> beam_width;
    CostMode cost_mode = CostMode::leaf;
};

struct Plan {
    std::vector<MotionPrimitive> commands;
    double predicted_cost = 0.0;
    /// Nodes generated including the root.
    std::size_t tree_nodes = 0;
};

/// Covariance-only EKF update assuming the reading lands exactly on the
/// prediction. Beliefs outside the FoV come back unchanged.
Belief expected_correction(const Belief &belief, const Pose &amav_pose, const FovParams &fov,
                           const NoiseModel &range_noise, const NoiseModel &bearing_noise);

/// Search-tree planning of one AMAV over delta steps.
///
/// Each edge applies one primitive to the parent pose, predicts every group
/// belief forward with its known command, then applies expected_correction at
/// the child pose. The returned plan leads to the cheapest leaf; ties go to the
/// earliest sequence in primitive enumeration order.
///
/// With a beam width, each level keeps the cheapest children by partial cost,
/// breaking ties by the group uncertainty near the FoV centre (each trace
/// discounted by exp(-distance / r_max)), so approaching moves survive while
/// nothing is in view yet.
///
/// Throws std::invalid_argument for delta < 1, no primitives, an empty group
/// or mismatched command count.
Plan plan_amav(const Pose &start, std::span<const Belief> group_beliefs, std::span<const Vec2> bmav_cmds,
               const PlannerSettings &settings);

/// Independent plan_amav per AMAV over its own group. plans[j] belongs to AMAV j.
std::vector<Plan> plan_all(const GroupAssignment &assignment, std::span<const Pose> amav_poses,
                           std::span<const Belief> beliefs, std::span<const Vec2> bmav_cmds,
                           const PlannerSettings &settings);

/// Sum of covariance traces.
double total_uncertainty(std::span<const Belief> beliefs);

}  // namespace transformloc
