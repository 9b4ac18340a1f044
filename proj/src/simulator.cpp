#include "transformloc/simulator.hpp"

#include "transformloc/navigation.hpp"

#include <algorithm>

namespace transformloc {
namespace {

PlannerSettings planner_settings(const ScenarioConfig &c) {
    PlannerSettings s;
    s.primitives = c.primitives;
    s.delta = c.strategy == Strategy::greedy ? 1 : c.delta;
    s.dt = c.dt;
    s.fov = c.fov;
    s.motion_noise = c.motion_noise;
    s.range_noise = c.range_noise;
    s.bearing_noise = c.bearing_noise;
    s.process_noise_scale = c.noise_per_interval ? static_cast<double>(c.delta) : 1.0;
    s.arena = c.arena;
    s.beam_width = c.beam_width;
    s.cost_mode = c.accumulated_cost ? CostMode::accumulated : CostMode::leaf;
    return s;
}

Vec2 random_waypoint(const ScenarioConfig &c, Rng &rng) {
    std::uniform_real_distribution<double> ux(c.destination_margin, c.arena.length - c.destination_margin);
    std::uniform_real_distribution<double> uy(c.destination_margin, c.arena.width - c.destination_margin);
    const double x = ux(rng);
    const double y = uy(rng);
    return {x, y};
}

class Engine {
   public:
    explicit Engine(const ScenarioConfig &config)
        : c_(resolve(config)),
          settings_(planner_settings(c_)),
          motion_rng_(derive_rng(c_.seed, RngStream::motion)),
          sensing_rng_(derive_rng(c_.seed, RngStream::sensing)),
          waypoint_rng_(derive_rng(c_.seed, RngStream::waypoints)),
          pose_rng_(derive_rng(c_.seed, RngStream::amav_pose)) {
        amavs_ = c_.amav_starts;
        amav_estimates_ = amavs_;
        for (int i = 0; i < c_.bmav_count; ++i) {
            bmavs_.push_back({.position = c_.bmav_starts[i], .velocity_cmd = Vec2::Zero()});
            beliefs_.push_back(initial_belief(c_.bmav_starts[i], c_.initial_variance));
        }
        targets_ = c_.bmav_destinations;
        interval_noise_.assign(bmavs_.size(), Vec2::Zero());
    }

    SimTrace run() {
        SimTrace trace;
        trace.steps.reserve(c_.horizon);
        for (long t = 0; t < c_.horizon; ++t) {
            trace.steps.push_back(step(t));
        }
        trace.config = c_;
        return trace;
    }

   private:
    bool uses_amavs() const { return c_.strategy != Strategy::dead_reckoning; }
    bool amavs_move() const {
        return c_.strategy == Strategy::transformloc || c_.strategy == Strategy::greedy;
    }

    std::vector<Vec2> belief_means() const {
        std::vector<Vec2> out;
        out.reserve(beliefs_.size());
        for (const Belief &b : beliefs_) {
            out.push_back(b.mean);
        }
        return out;
    }

    std::vector<Vec2> amav_positions() const {
        std::vector<Vec2> out;
        out.reserve(amav_estimates_.size());
        for (const Pose &p : amav_estimates_) {
            out.push_back(p.position());
        }
        return out;
    }

    std::vector<Vec2> commands() const {
        std::vector<Vec2> out;
        out.reserve(bmavs_.size());
        for (const BmavTruth &b : bmavs_) {
            out.push_back(b.velocity_cmd);
        }
        return out;
    }

    void start_interval(long t) {
        const std::vector<Vec2> means = belief_means();
        if (uses_amavs()) {
            assignment_ = assign_groups(amav_positions(), means, t, c_.delta);
        }
        std::vector<Vec2> neighbours;
        for (std::size_t i = 0; i < bmavs_.size(); ++i) {
            if (c_.wander && (targets_[i] - means[i]).norm() < c_.nav.arrive_radius) {
                targets_[i] = random_waypoint(c_, waypoint_rng_);
            }
            neighbours.clear();
            for (std::size_t k = 0; k < means.size(); ++k) {
                if (k != i) {
                    neighbours.push_back(means[k]);
                }
            }
            bmavs_[i].velocity_cmd = plan_bmav_cmd(means[i], targets_[i], neighbours, c_.arena, c_.nav);
        }
        if (c_.noise_per_interval) {
            for (std::size_t i = 0; i < bmavs_.size(); ++i) {
                interval_noise_[i] = sample_motion_noise(bmavs_[i].velocity_cmd, c_.motion_noise, motion_rng_);
            }
        }
    }

    void update_amav_estimates() {
        if (c_.amav_position_noise == 0.0 && c_.amav_heading_noise == 0.0) {
            amav_estimates_ = amavs_;
            return;
        }
        std::normal_distribution<double> standard(0.0, 1.0);
        for (std::size_t j = 0; j < amavs_.size(); ++j) {
            const double n1 = standard(pose_rng_);
            const double n2 = standard(pose_rng_);
            const double n3 = standard(pose_rng_);
            amav_estimates_[j] = {amavs_[j].x1 + c_.amav_position_noise * n1,
                                  amavs_[j].x2 + c_.amav_position_noise * n2,
                                  wrap_angle(amavs_[j].phi + c_.amav_heading_noise * n3)};
        }
    }

    StepRecord step(long t) {
        StepRecord rec;
        rec.t = t;

        const bool interval_start = t % c_.delta == 0;
        if (interval_start) {
            start_interval(t);
        }
        const bool replan = amavs_move() && (interval_start || c_.strategy == Strategy::greedy);
        if (replan) {
            plans_ = plan_all(assignment_, amav_estimates_, beliefs_, commands(), settings_);
            plan_cursor_ = 0;
            rec.plans = plans_;
        }

        if (amavs_move()) {
            for (std::size_t j = 0; j < amavs_.size(); ++j) {
                const auto &cmds = plans_[j].commands;
                const MotionPrimitive cmd =
                    plan_cursor_ < cmds.size() ? cmds[plan_cursor_] : MotionPrimitive{};
                amavs_[j] = step_amav(amavs_[j], cmd, c_.dt);
            }
            ++plan_cursor_;
        }
        update_amav_estimates();

        const double q_scale = c_.noise_per_interval ? static_cast<double>(c_.delta) : 1.0;
        for (std::size_t i = 0; i < bmavs_.size(); ++i) {
            const Mat2 q = q_scale * process_noise(bmavs_[i].velocity_cmd, c_.motion_noise);
            const BmavStep moved =
                c_.noise_per_interval
                    ? integrate_bmav(bmavs_[i], interval_noise_[i], c_.dt, c_.arena)
                    : step_bmav_truth(bmavs_[i], c_.motion_noise, motion_rng_, c_.dt, c_.arena);
            bmavs_[i] = moved.truth;
            beliefs_[i] = predict(beliefs_[i], moved.velocity_reading, q, c_.dt);
        }

        if (uses_amavs()) {
            correct_all(t, rec);
            rec.group_of = assignment_.region_of;
        }

        rec.amav_poses = amavs_;
        rec.amav_pose_estimates = amav_estimates_;
        rec.bmav_truth.reserve(bmavs_.size());
        for (const BmavTruth &b : bmavs_) {
            rec.bmav_truth.push_back(b.position);
        }
        rec.beliefs = beliefs_;
        rec.bmav_cmds = commands();
        return rec;
    }

    // Every AMAV corrects every BMAV inside its FoV, whatever the grouping.
    void correct_all(long t, StepRecord &rec) {
        for (std::size_t j = 0; j < amavs_.size(); ++j) {
            for (std::size_t i = 0; i < bmavs_.size(); ++i) {
                auto obs = observe(amavs_[j], bmavs_[i].position, c_.fov, c_.range_noise, c_.bearing_noise,
                                   sensing_rng_);
                if (!obs) {
                    continue;
                }
                obs->amav_id = static_cast<int>(j);
                obs->bmav_id = static_cast<int>(i);
                obs->timestamp = t;
                const Pose &from = amav_estimates_[j];
                if ((beliefs_[i].mean - from.position()).norm() < 1e-6) {
                    continue;  // linearization undefined at the sensor itself
                }
                const Observation predicted = predict_observation(from, beliefs_[i].mean);
                const Mat2 r = measurement_covariance(predicted, c_.range_noise, c_.bearing_noise);
                const double before = uncertainty(beliefs_[i]);
                try {
                    beliefs_[i] = correct(beliefs_[i], *obs, from, r);
                } catch (const SingularInnovation &) {
                    continue;  // nothing left to learn along a zero-variance axis
                }
                rec.corrections.push_back(
                    {.observation = *obs, .trace_before = before, .trace_after = uncertainty(beliefs_[i])});
            }
        }
    }

    ScenarioConfig c_;
    PlannerSettings settings_;
    Rng motion_rng_;
    Rng sensing_rng_;
    Rng waypoint_rng_;
    Rng pose_rng_;

    std::vector<Pose> amavs_;
    std::vector<Pose> amav_estimates_;
    std::vector<BmavTruth> bmavs_;
    std::vector<Belief> beliefs_;
    std::vector<Vec2> targets_;
    std::vector<Vec2> interval_noise_;
    GroupAssignment assignment_;
    std::vector<Plan> plans_;
    std::size_t plan_cursor_ = 0;
};

}  // namespace

SimTrace run_scenario(const ScenarioConfig &config) { return Engine(config).run(); }

SimTrace run_baseline_station(ScenarioConfig config) {
    config.strategy = Strategy::station;
    return run_scenario(config);
}

SimTrace run_baseline_greedy(ScenarioConfig config) {
    config.strategy = Strategy::greedy;
    return run_scenario(config);
}

SimTrace run_dead_reckoning(ScenarioConfig config) {
    config.strategy = Strategy::dead_reckoning;
    return run_scenario(config);
}

}  // namespace transformloc
