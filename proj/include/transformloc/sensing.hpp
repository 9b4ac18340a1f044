#pragma once

#include "transformloc/world.hpp"

#include <numbers>
#include <optional>

namespace transformloc {

/// Minimum range at which the observation model is still defined.
inline constexpr double kMinRange = 1e-9;

/// Viewing cone of an AMAV camera. angle is the full aperture.
struct FovParams {
    double angle = 2.0 * std::numbers::pi / 3.0;
    double r_max = 1.0;

    bool operator==(const FovParams &) const = default;
};

/// Range/bearing reading of a BMAV taken by an AMAV. Bearing is relative to the
/// AMAV heading.
struct Observation {
    double range = 0.0;
    double bearing = 0.0;
    int amav_id = -1;
    int bmav_id = -1;
    long timestamp = 0;
};

/// Open cone test: 0 < d < r_max and |bearing| < angle / 2.
bool fov_contains(const Pose &pose, const FovParams &fov, const Vec2 &point);

/// Noiseless h(x, y). Throws std::domain_error when the points coincide.
Observation predict_observation(const Pose &amav, const Vec2 &bmav_pos);

/// Noisy reading of a BMAV, or nothing when it lies outside the FoV.
/// Range and bearing noise are drawn in that order, one draw each.
std::optional<Observation> observe(const Pose &amav, const Vec2 &bmav_truth, const FovParams &fov,
                                   const NoiseModel &noise_r, const NoiseModel &noise_a, Rng &rng);

/// Jacobian of h with respect to the BMAV position, evaluated at bmav_est.
/// Throws std::domain_error when the range falls below kMinRange.
Mat2 jacobian_h(const Pose &amav, const Vec2 &bmav_est);

/// diag(sigma_r^2, sigma_alpha^2) evaluated at a (usually predicted) reading.
Mat2 measurement_covariance(const Observation &at, const NoiseModel &noise_r, const NoiseModel &noise_a);

}  // namespace transformloc
