#include "transformloc/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace transformloc {
namespace {

constexpr MotionPrimitive kHover{0.0, 0.0};

struct Rollout {
    const PlannerSettings &settings;
    std::span<const Vec2> cmds;
    std::vector<Mat2> q;

    Rollout(const PlannerSettings &s, std::span<const Vec2> bmav_cmds) : settings(s), cmds(bmav_cmds) {
        q.reserve(cmds.size());
        for (const Vec2 &c : cmds) {
            q.push_back(s.process_noise_scale * process_noise(c, s.motion_noise));
        }
    }

    // One tree edge. Returns false when the child pose leaves the arena.
    bool advance(const Pose &pose, std::span<const Belief> beliefs, const MotionPrimitive &cmd, Pose &child,
                 std::span<Belief> child_beliefs) const {
        child = step_amav(pose, cmd, settings.dt);
        if (settings.arena && !settings.arena->contains(child.position())) {
            return false;
        }
        for (std::size_t i = 0; i < beliefs.size(); ++i) {
            const Belief prior = predict(beliefs[i], cmds[i], q[i], settings.dt);
            child_beliefs[i] =
                expected_correction(prior, child, settings.fov, settings.range_noise, settings.bearing_noise);
        }
        return true;
    }

    double edge_cost(double parent_cost, std::span<const Belief> child_beliefs) const {
        const double level = total_uncertainty(child_beliefs);
        return settings.cost_mode == CostMode::accumulated ? parent_cost + level : level;
    }

    // Uncertainty within reach of the FoV centre, discounted by distance in units of
    // the sensing range. Lower is better.
    double approach_score(const Pose &pose, std::span<const Belief> beliefs) const {
        const Vec2 centre =
            pose.position() + 0.5 * settings.fov.r_max * Vec2(std::cos(pose.phi), std::sin(pose.phi));
        double score = 0.0;
        for (const Belief &b : beliefs) {
            score -= uncertainty(b) * std::exp(-(centre - b.mean).norm() / settings.fov.r_max);
        }
        return score;
    }
};

struct Search {
    const Rollout &rollout;
    std::size_t group_size;
    int delta;
    std::vector<std::vector<Belief>> scratch{};  // beliefs per depth
    std::vector<MotionPrimitive> path{};
    std::vector<MotionPrimitive> best_path{};
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t nodes = 1;

    void visit(int depth, const Pose &pose, double cost) {
        if (depth == delta) {
            if (cost < best_cost) {
                best_cost = cost;
                best_path = path;
            }
            return;
        }
        const std::span<const Belief> parent(scratch[depth]);
        std::span<Belief> child_beliefs(scratch[depth + 1]);
        bool any_child = false;
        Pose child;
        for (const MotionPrimitive &cmd : rollout.settings.primitives) {
            if (!rollout.advance(pose, parent, cmd, child, child_beliefs)) {
                continue;
            }
            any_child = true;
            descend(depth, child, cmd, rollout.edge_cost(cost, child_beliefs));
        }
        if (!any_child) {
            rollout.advance(pose, parent, kHover, child, child_beliefs);
            descend(depth, child, kHover, rollout.edge_cost(cost, child_beliefs));
        }
    }

    void descend(int depth, const Pose &child, const MotionPrimitive &cmd, double cost) {
        ++nodes;
        path.push_back(cmd);
        visit(depth + 1, child, cost);
        path.pop_back();
    }
};

Plan full_expansion(const Pose &start, std::span<const Belief> group, const Rollout &rollout, int delta) {
    Search search{.rollout = rollout, .group_size = group.size(), .delta = delta};
    search.scratch.assign(delta + 1, std::vector<Belief>(group.size()));
    std::copy(group.begin(), group.end(), search.scratch[0].begin());
    search.path.reserve(delta);
    search.visit(0, start, 0.0);
    return {.commands = std::move(search.best_path), .predicted_cost = search.best_cost, .tree_nodes = search.nodes};
}

struct BeamNode {
    Pose pose;
    double cost = 0.0;
    double score = 0.0;
    std::size_t parent = 0;
    std::size_t order = 0;  // enumeration index within its level
    MotionPrimitive cmd{};
};

Plan beam_search(const Pose &start, std::span<const Belief> group, const Rollout &rollout, int delta,
                 std::size_t beam_width) {
    const std::size_t g = group.size();
    const auto &primitives = rollout.settings.primitives;

    std::vector<std::vector<BeamNode>> levels(delta + 1);
    levels[0].push_back({.pose = start});
    std::vector<Belief> frontier(group.begin(), group.end());
    std::size_t nodes = 1;

    std::vector<BeamNode> children;
    std::vector<Belief> child_beliefs;
    for (int depth = 0; depth < delta; ++depth) {
        const auto &parents = levels[depth];
        children.clear();
        child_beliefs.clear();
        child_beliefs.reserve(parents.size() * primitives.size() * g);

        auto try_child = [&](std::size_t p, const MotionPrimitive &cmd) {
            const std::size_t offset = child_beliefs.size();
            child_beliefs.resize(offset + g);
            const std::span<Belief> out(child_beliefs.data() + offset, g);
            const std::span<const Belief> in(frontier.data() + p * g, g);
            Pose child;
            if (!rollout.advance(parents[p].pose, in, cmd, child, out)) {
                child_beliefs.resize(offset);
                return false;
            }
            children.push_back({.pose = child,
                                .cost = rollout.edge_cost(parents[p].cost, out),
                                .score = rollout.approach_score(child, out),
                                .parent = p,
                                .order = children.size(),
                                .cmd = cmd});
            return true;
        };
        for (std::size_t p = 0; p < parents.size(); ++p) {
            bool any_child = false;
            for (const MotionPrimitive &cmd : primitives) {
                any_child = try_child(p, cmd) || any_child;
            }
            if (!any_child) {
                try_child(p, kHover);
            }
        }
        nodes += children.size();

        std::vector<std::size_t> keep(children.size());
        std::iota(keep.begin(), keep.end(), std::size_t{0});
        const bool last = depth + 1 == delta;
        if (!last && keep.size() > beam_width) {
            std::partial_sort(keep.begin(), keep.begin() + beam_width, keep.end(),
                              [&](std::size_t a, std::size_t b) {
                                  const BeamNode &x = children[a];
                                  const BeamNode &y = children[b];
                                  if (x.cost != y.cost) return x.cost < y.cost;
                                  if (x.score != y.score) return x.score < y.score;
                                  return x.order < y.order;
                              });
            keep.resize(beam_width);
            // Survivors stay in enumeration order so final ties resolve the same way
            // as in the full tree.
            std::sort(keep.begin(), keep.end());
        }

        std::vector<Belief> next_frontier;
        next_frontier.reserve(keep.size() * g);
        auto &level = levels[depth + 1];
        level.reserve(keep.size());
        for (std::size_t k : keep) {
            BeamNode node = children[k];
            node.order = level.size();
            level.push_back(node);
            next_frontier.insert(next_frontier.end(), child_beliefs.begin() + k * g,
                                 child_beliefs.begin() + (k + 1) * g);
        }
        frontier = std::move(next_frontier);
    }

    const auto &leaves = levels[delta];
    std::size_t best = 0;
    for (std::size_t k = 1; k < leaves.size(); ++k) {
        if (leaves[k].cost < leaves[best].cost) {
            best = k;
        }
    }
    Plan plan;
    plan.predicted_cost = leaves[best].cost;
    plan.tree_nodes = nodes;
    plan.commands.resize(delta);
    std::size_t index = best;
    for (int depth = delta; depth > 0; --depth) {
        const BeamNode &node = levels[depth][index];
        plan.commands[depth - 1] = node.cmd;
        index = node.parent;
    }
    return plan;
}

}  // namespace

double total_uncertainty(std::span<const Belief> beliefs) {
    double sum = 0.0;
    for (const Belief &b : beliefs) {
        sum += uncertainty(b);
    }
    return sum;
}

Belief expected_correction(const Belief &belief, const Pose &amav_pose, const FovParams &fov,
                           const NoiseModel &range_noise, const NoiseModel &bearing_noise) {
    if (!fov_contains(amav_pose, fov, belief.mean)) {
        return belief;
    }
    const Observation at = predict_observation(amav_pose, belief.mean);
    const Mat2 h = jacobian_h(amav_pose, belief.mean);
    const Mat2 r = measurement_covariance(at, range_noise, bearing_noise);
    try {
        return {.mean = belief.mean, .cov = posterior_covariance(belief.cov, h, r)};
    } catch (const SingularInnovation &) {
        return belief;
    }
}

Plan plan_amav(const Pose &start, std::span<const Belief> group_beliefs, std::span<const Vec2> bmav_cmds,
               const PlannerSettings &settings) {
    if (settings.delta < 1) {
        throw std::invalid_argument("plan_amav: delta must be at least 1");
    }
    if (settings.primitives.empty()) {
        throw std::invalid_argument("plan_amav: empty primitive set");
    }
    if (group_beliefs.empty()) {
        throw std::invalid_argument("plan_amav: empty group");
    }
    if (bmav_cmds.size() != group_beliefs.size()) {
        throw std::invalid_argument("plan_amav: one command per group belief is required");
    }
    if (settings.beam_width && *settings.beam_width == 0) {
        throw std::invalid_argument("plan_amav: beam width must be positive");
    }
    const Rollout rollout(settings, bmav_cmds);
    if (settings.beam_width) {
        return beam_search(start, group_beliefs, rollout, settings.delta, *settings.beam_width);
    }
    return full_expansion(start, group_beliefs, rollout, settings.delta);
}

std::vector<Plan> plan_all(const GroupAssignment &assignment, std::span<const Pose> amav_poses,
                           std::span<const Belief> beliefs, std::span<const Vec2> bmav_cmds,
                           const PlannerSettings &settings) {
    if (assignment.groups.size() != amav_poses.size()) {
        throw std::invalid_argument("plan_all: assignment does not match the AMAV count");
    }
    std::vector<Plan> plans;
    plans.reserve(amav_poses.size());
    std::vector<Belief> group_beliefs;
    std::vector<Vec2> group_cmds;
    for (std::size_t j = 0; j < amav_poses.size(); ++j) {
        group_beliefs.clear();
        group_cmds.clear();
        for (std::size_t i : assignment.groups[j]) {
            group_beliefs.push_back(beliefs[i]);
            group_cmds.push_back(bmav_cmds[i]);
        }
        plans.push_back(plan_amav(amav_poses[j], group_beliefs, group_cmds, settings));
    }
    return plans;
}

}  // namespace transformloc
