#include "transformloc/estimation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace transformloc {
namespace {

Mat2 symmetrized(const Mat2 &m) { return 0.5 * (m + m.transpose()); }

Mat2 kalman_gain(const Mat2 &prior_cov, const Mat2 &h, const Mat2 &r_cov) {
    const Mat2 s = h * prior_cov * h.transpose() + r_cov;
    const double det = s.determinant();
    const double scale = std::max(s.cwiseAbs().maxCoeff(), 1e-300);
    if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale * scale) {
        throw SingularInnovation();
    }
    return prior_cov * h.transpose() * s.inverse();
}

Mat2 updated_covariance(const Mat2 &prior_cov, const Mat2 &gain, const Mat2 &h) {
    const Mat2 post = symmetrized((Mat2::Identity() - gain * h) * prior_cov);
    if (!is_psd(post)) {
        throw std::domain_error("posterior covariance is not positive semi-definite");
    }
    return post;
}

}  // namespace

Belief initial_belief(const Vec2 &start, double variance) {
    return {.mean = start, .cov = variance * Mat2::Identity()};
}

Belief predict(const Belief &b, const Vec2 &v_meas, const Mat2 &q, double dt) {
    return {.mean = b.mean + dt * v_meas, .cov = symmetrized(b.cov + dt * dt * q)};
}

Mat2 posterior_covariance(const Mat2 &prior_cov, const Mat2 &h, const Mat2 &r_cov) {
    return updated_covariance(prior_cov, kalman_gain(prior_cov, h, r_cov), h);
}

Belief correct(const Belief &b, const Observation &obs, const Pose &amav, const Mat2 &r_cov) {
    const Observation predicted = predict_observation(amav, b.mean);
    const Mat2 h = jacobian_h(amav, b.mean);
    const Vec2 innovation(obs.range - predicted.range, wrap_angle(obs.bearing - predicted.bearing));
    const Mat2 gain = kalman_gain(b.cov, h, r_cov);
    return {.mean = b.mean + gain * innovation, .cov = updated_covariance(b.cov, gain, h)};
}

double uncertainty(const Belief &b) { return b.cov.trace(); }

std::vector<std::size_t> rank_by_uncertainty(std::span<const Belief> beliefs) {
    std::vector<std::size_t> order(beliefs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return uncertainty(beliefs[a]) > uncertainty(beliefs[b]);
    });
    return order;
}

Mat2 process_noise(const Vec2 &velocity_cmd, const NoiseModel &noise) {
    const double s1 = noise.stddev(velocity_cmd.x());
    const double s2 = noise.stddev(velocity_cmd.y());
    Mat2 q = Mat2::Zero();
    q(0, 0) = s1 * s1;
    q(1, 1) = s2 * s2;
    return q;
}

bool is_psd(const Mat2 &m, double tolerance) {
    if (!m.allFinite()) {
        return false;
    }
    const Eigen::SelfAdjointEigenSolver<Mat2> solver(symmetrized(m), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tolerance;
}

}  // namespace transformloc
