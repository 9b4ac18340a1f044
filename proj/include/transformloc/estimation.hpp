#pragma once

#include "transformloc/sensing.hpp"
#include "transformloc/world.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace transformloc {

/// Gaussian position estimate of one BMAV.
struct Belief {
    Vec2 mean = Vec2::Zero();
    Mat2 cov = Mat2::Zero();
};

/// H P H^T + R has no usable inverse. Happens only in degenerate geometry, e.g.
/// a zero bearing noise floor with a target already pinned on the sensor axis.
struct SingularInnovation : std::domain_error {
    SingularInnovation() : std::domain_error("innovation covariance is singular") {}
};

/// Belief at launch: the known start position with a small isotropic variance.
Belief initial_belief(const Vec2 &start, double variance);

/// Dead-reckoning prior: mean += dt * v_meas, cov += dt^2 * q.
Belief predict(const Belief &b, const Vec2 &v_meas, const Mat2 &q, double dt);

/// EKF correction with one range/bearing reading taken from `amav`.
///
/// The bearing innovation is wrapped to (-pi, pi]. The result is symmetrized.
/// Throws SingularInnovation if the innovation covariance is singular and
/// std::domain_error if the posterior covariance is not PSD.
Belief correct(const Belief &b, const Observation &obs, const Pose &amav, const Mat2 &r_cov);

/// (I - K H) P with K = P H^T (H P H^T + R)^-1, symmetrized. Shared by the
/// filter and the planner's expected-information rollout.
Mat2 posterior_covariance(const Mat2 &prior_cov, const Mat2 &h, const Mat2 &r_cov);

/// Trace of the covariance; the uncertainty indicator.
double uncertainty(const Belief &b);

/// Indices by descending uncertainty, ties by ascending index.
std::vector<std::size_t> rank_by_uncertainty(std::span<const Belief> beliefs);

/// diag(sigma_1^2, sigma_2^2) with sigma_axis = noise.stddev(v_axis).
Mat2 process_noise(const Vec2 &velocity_cmd, const NoiseModel &noise);

bool is_psd(const Mat2 &m, double tolerance = 1e-10);

}  // namespace transformloc
