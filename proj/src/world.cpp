#include "transformloc/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace transformloc {

double wrap_angle(double angle) {
    constexpr double kPi = std::numbers::pi;
    double wrapped = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
    if (wrapped <= -kPi) {
        wrapped += 2.0 * kPi;
    }
    return wrapped;
}

bool Arena::contains(const Vec2 &p) const {
    return p.x() >= 0.0 && p.x() <= length && p.y() >= 0.0 && p.y() <= width;
}

Vec2 Arena::clamp(const Vec2 &p) const {
    return {std::clamp(p.x(), 0.0, length), std::clamp(p.y(), 0.0, width)};
}

double NoiseModel::stddev(double value) const {
    return std::max(sigma_fraction * std::abs(value), floor);
}

Pose step_amav(const Pose &pose, const MotionPrimitive &cmd, double dt) {
    return {
        .x1 = pose.x1 + cmd.u * std::cos(pose.phi) * dt,
        .x2 = pose.x2 + cmd.u * std::sin(pose.phi) * dt,
        .phi = wrap_angle(pose.phi + cmd.omega * dt),
    };
}

double sample_noise(double value, const NoiseModel &noise, Rng &rng) {
    std::normal_distribution<double> standard(0.0, 1.0);
    const double z = standard(rng);
    return noise.stddev(value) * z;
}

Vec2 sample_motion_noise(const Vec2 &velocity_cmd, const NoiseModel &noise, Rng &rng) {
    const double n1 = sample_noise(velocity_cmd.x(), noise, rng);
    const double n2 = sample_noise(velocity_cmd.y(), noise, rng);
    return {n1, n2};
}

BmavStep integrate_bmav(const BmavTruth &state, const Vec2 &noise, double dt,
                        const std::optional<Arena> &arena) {
    BmavStep out;
    out.noise = noise;
    out.velocity_reading = state.velocity_cmd;
    out.truth.velocity_cmd = state.velocity_cmd;
    Vec2 next = state.position + dt * (state.velocity_cmd + noise);
    if (arena) {
        const Vec2 clamped = arena->clamp(next);
        for (int axis = 0; axis < 2; ++axis) {
            if (clamped[axis] != next[axis]) {
                // Hit a wall: stop pushing into it for the rest of the interval.
                const bool into_low = clamped[axis] <= 0.0 && out.truth.velocity_cmd[axis] < 0.0;
                const bool into_high = clamped[axis] > 0.0 && out.truth.velocity_cmd[axis] > 0.0;
                if (into_low || into_high) {
                    out.truth.velocity_cmd[axis] = 0.0;
                }
            }
        }
        next = clamped;
    }
    out.truth.position = next;
    return out;
}

BmavStep step_bmav_truth(const BmavTruth &state, const NoiseModel &noise, Rng &rng, double dt,
                         const std::optional<Arena> &arena) {
    const Vec2 n = sample_motion_noise(state.velocity_cmd, noise, rng);
    return integrate_bmav(state, n, dt, arena);
}

}  // namespace transformloc
