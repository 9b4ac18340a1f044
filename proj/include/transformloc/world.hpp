#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <random>

namespace transformloc {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Seeded random stream. Every stochastic operation takes one explicitly.
using Rng = std::mt19937_64;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// Planar flight area [0, length] x [0, width]. All vehicles share one altitude.
struct Arena {
    double length = 14.0;
    double width = 14.0;

    bool contains(const Vec2 &p) const;
    Vec2 clamp(const Vec2 &p) const;

    bool operator==(const Arena &) const = default;
};

/// AMAV pose; phi is the heading and stays in (-pi, pi].
struct Pose {
    double x1 = 0.0;
    double x2 = 0.0;
    double phi = 0.0;

    Vec2 position() const { return {x1, x2}; }

    bool operator==(const Pose &) const = default;
};

/// Unicycle command: translational speed u (m/s) and turn rate omega (rad/s).
struct MotionPrimitive {
    double u = 0.0;
    double omega = 0.0;

    bool operator==(const MotionPrimitive &) const = default;
};

/// Zero-mean Gaussian whose standard deviation is a fraction of the noiseless value,
/// bounded below by an absolute floor.
struct NoiseModel {
    double sigma_fraction = 0.0;
    double floor = 0.0;

    double stddev(double value) const;

    bool operator==(const NoiseModel &) const = default;
};

struct BmavTruth {
    Vec2 position = Vec2::Zero();
    Vec2 velocity_cmd = Vec2::Zero();
};

/// Result of one ground-truth BMAV step.
struct BmavStep {
    BmavTruth truth;
    /// Velocity reading handed to the estimator. The vehicle actually flew
    /// velocity_cmd + noise, so the reading is off from the true velocity by
    /// exactly the motion noise.
    Vec2 velocity_reading = Vec2::Zero();
    /// The per-axis motion noise that was applied.
    Vec2 noise = Vec2::Zero();
};

/// Unicycle model integrated over dt. Noise free.
Pose step_amav(const Pose &pose, const MotionPrimitive &cmd, double dt = 1.0);

/// One draw from Normal(0, noise.stddev(value)). Always consumes exactly one
/// standard-normal draw from rng, even when the deviation is zero.
double sample_noise(double value, const NoiseModel &noise, Rng &rng);

/// Per-axis motion noise for a commanded velocity.
Vec2 sample_motion_noise(const Vec2 &velocity_cmd, const NoiseModel &noise, Rng &rng);

/// Integrates y <- y + dt (v_cmd + noise) with a caller-supplied noise vector.
/// With an arena the position is clamped and the command component pushing
/// into the wall is zeroed.
BmavStep integrate_bmav(const BmavTruth &state, const Vec2 &noise, double dt,
                        const std::optional<Arena> &arena = std::nullopt);

BmavStep step_bmav_truth(const BmavTruth &state, const NoiseModel &noise, Rng &rng,
                         double dt = 1.0, const std::optional<Arena> &arena = std::nullopt);

}  // namespace transformloc
