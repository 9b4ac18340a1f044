#include "transformloc/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace transformloc {

bool fov_contains(const Pose &pose, const FovParams &fov, const Vec2 &point) {
    const Vec2 delta = point - pose.position();
    const double d = delta.norm();
    if (!(d > 0.0 && d < fov.r_max)) {
        return false;
    }
    const double bearing = wrap_angle(std::atan2(delta.y(), delta.x()) - pose.phi);
    return std::abs(bearing) < 0.5 * fov.angle;
}

Observation predict_observation(const Pose &amav, const Vec2 &bmav_pos) {
    const Vec2 delta = bmav_pos - amav.position();
    const double r = delta.norm();
    if (r < kMinRange) {
        throw std::domain_error("predict_observation: BMAV coincides with AMAV, bearing undefined");
    }
    Observation obs;
    obs.range = r;
    obs.bearing = wrap_angle(std::atan2(delta.y(), delta.x()) - amav.phi);
    return obs;
}

std::optional<Observation> observe(const Pose &amav, const Vec2 &bmav_truth, const FovParams &fov,
                                   const NoiseModel &noise_r, const NoiseModel &noise_a, Rng &rng) {
    if (!fov_contains(amav, fov, bmav_truth)) {
        return std::nullopt;
    }
    Observation obs = predict_observation(amav, bmav_truth);
    const double nr = sample_noise(obs.range, noise_r, rng);
    const double na = sample_noise(obs.bearing, noise_a, rng);
    // A non-positive range would need a > 10 sigma draw; keep the invariant anyway.
    obs.range = std::max(obs.range + nr, kMinRange);
    obs.bearing = wrap_angle(obs.bearing + na);
    return obs;
}

Mat2 jacobian_h(const Pose &amav, const Vec2 &bmav_est) {
    const Observation at = predict_observation(amav, bmav_est);
    const Vec2 delta = bmav_est - amav.position();
    const double angle = amav.phi + at.bearing;
    // Row 0 is d r / d y; row 1 is d alpha / d y = (-sin, cos) / r.
    Mat2 jac;
    jac << delta.x() / at.range, delta.y() / at.range,  //
        -std::sin(angle) / at.range, std::cos(angle) / at.range;
    return jac;
}

Mat2 measurement_covariance(const Observation &at, const NoiseModel &noise_r, const NoiseModel &noise_a) {
    const double sr = noise_r.stddev(at.range);
    const double sa = noise_a.stddev(at.bearing);
    Mat2 r = Mat2::Zero();
    r(0, 0) = sr * sr;
    r(1, 1) = sa * sa;
    return r;
}

}  // namespace transformloc
