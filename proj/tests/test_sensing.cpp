#include "transformloc/sensing.hpp"

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace transformloc;

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 finite_difference(const Pose &amav, const Vec2 &y, double h) {
    Mat2 fd;
    for (int c = 0; c < 2; ++c) {
        Vec2 e = Vec2::Zero();
        e(c) = h;
        const Observation plus = predict_observation(amav, y + e);
        const Observation minus = predict_observation(amav, y - e);
        fd(0, c) = (plus.range - minus.range) / (2 * h);
        fd(1, c) = wrap_angle(plus.bearing - minus.bearing) / (2 * h);
    }
    return fd;
}

}  // namespace

TEST(FovContains, Examples) {
    const FovParams fov{2 * kPi / 3, 1.0};
    EXPECT_TRUE(fov_contains({0, 0, 0}, fov, {0.5, 0}));
    EXPECT_FALSE(fov_contains({0, 0, 0}, fov, {-0.5, 0}));
    EXPECT_FALSE(fov_contains({0, 0, 0}, fov, {2, 0}));
}

TEST(FovContains, BoundaryIsOpen) {
    const FovParams fov{kPi / 2, 1.0};
    EXPECT_FALSE(fov_contains({0, 0, 0}, fov, {1.0, 0}));
    EXPECT_FALSE(fov_contains({0, 0, 0}, fov, {0, 0}));
    const double edge = kPi / 4;
    EXPECT_FALSE(fov_contains({0, 0, 0}, fov, {0.5 * std::cos(edge + 1e-9), 0.5 * std::sin(edge + 1e-9)}));
    EXPECT_TRUE(fov_contains({0, 0, 0}, fov, {0.5 * std::cos(edge - 1e-9), 0.5 * std::sin(edge - 1e-9)}));
}

TEST(PredictObservation, Examples) {
    const Observation a = predict_observation({0, 0, 0}, {1, 0});
    EXPECT_DOUBLE_EQ(a.range, 1.0);
    EXPECT_DOUBLE_EQ(a.bearing, 0.0);
    const Observation b = predict_observation({0, 0, kPi / 2}, {0, 2});
    EXPECT_DOUBLE_EQ(b.range, 2.0);
    EXPECT_NEAR(b.bearing, 0.0, 1e-15);
    const Observation c = predict_observation({1, 1, 0}, {1, 2});
    EXPECT_DOUBLE_EQ(c.range, 1.0);
    EXPECT_DOUBLE_EQ(c.bearing, kPi / 2);
}

TEST(PredictObservation, CoincidentThrows) {
    EXPECT_THROW(predict_observation({1, 1, 0}, {1, 1}), std::domain_error);
}

TEST(PredictObservation, RotationInvariance) {
    Rng rng(6);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int k = 0; k < 500; ++k) {
        const Pose amav{u(rng), u(rng), wrap_angle(u(rng))};
        const Vec2 y(u(rng), u(rng));
        const double theta = u(rng);
        const Eigen::Rotation2D<double> rot(theta);
        const Vec2 rotated = amav.position() + rot * (y - amav.position());
        const Observation a = predict_observation(amav, y);
        const Observation b = predict_observation({amav.x1, amav.x2, wrap_angle(amav.phi + theta)}, rotated);
        EXPECT_NEAR(a.range, b.range, 1e-12);
        EXPECT_NEAR(wrap_angle(a.bearing - b.bearing), 0.0, 1e-12);
    }
}

TEST(Observe, Examples) {
    Rng rng(1);
    const FovParams fov;
    EXPECT_FALSE(observe({0, 0, 0}, {-0.5, 0}, fov, {0.1, 0}, {0.05, 0}, rng).has_value());
    const auto z = observe({0, 0, 0}, {0.5, 0}, fov, {0, 0}, {0, 0}, rng);
    ASSERT_TRUE(z.has_value());
    EXPECT_DOUBLE_EQ(z->range, 0.5);
    EXPECT_DOUBLE_EQ(z->bearing, 0.0);
}

TEST(Observe, RangeNoiseMonteCarlo) {
    Rng rng(12);
    const FovParams fov;
    double sum = 0;
    double sq = 0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const double r = observe({0, 0, 0}, {0.5, 0}, fov, {0.1, 0}, {0.05, 0}, rng)->range;
        sum += r;
        sq += r * r;
    }
    const double mean = sum / n;
    EXPECT_NEAR(std::sqrt(sq / n - mean * mean), 0.05, 0.0015);
}

TEST(Observe, AgreesWithFovContains) {
    Rng rng(13);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const FovParams fov;
    const Pose amav{0, 0, 0.7};
    for (int k = 0; k < 5000; ++k) {
        const Vec2 y(u(rng), u(rng));
        EXPECT_EQ(observe(amav, y, fov, {0.1, 0}, {0.05, 0}, rng).has_value(), fov_contains(amav, fov, y));
    }
}

TEST(JacobianH, Examples) {
    EXPECT_TRUE(jacobian_h({0, 0, 0}, {1, 0}).isApprox(Mat2::Identity()));
    Mat2 up;
    up << 0, 1, -0.5, 0;
    EXPECT_TRUE(jacobian_h({0, 0, 0}, {0, 2}).isApprox(up, 1e-12));
    EXPECT_TRUE(finite_difference({0, 0, 0}, {0, 2}, 1e-6).isApprox(up, 1e-8));
    Mat2 far;
    far << 1, 0, 0, 0.5;
    EXPECT_TRUE(jacobian_h({0, 0, 0}, {2, 0}).isApprox(far, 1e-12));
    EXPECT_TRUE(finite_difference({0, 0, 0}, {2, 0}, 1e-6).isApprox(far, 1e-8));
}

TEST(JacobianH, FiniteDifferences) {
    Rng rng(14);
    std::uniform_real_distribution<double> u(0, 1);
    for (int k = 0; k < 1000; ++k) {
        const Pose amav{10 * u(rng) - 5, 10 * u(rng) - 5, wrap_angle(7 * u(rng))};
        const double r = 0.1 + 4 * u(rng);
        const double a = 7 * u(rng);
        const Vec2 y = amav.position() + r * Vec2(std::cos(a), std::sin(a));
        const Mat2 j = jacobian_h(amav, y);
        EXPECT_LE((j - finite_difference(amav, y, 1e-6 * r)).norm() / j.norm(), 1e-5);
    }
}

TEST(JacobianH, TinyRangeThrows) {
    EXPECT_THROW(jacobian_h({0, 0, 0}, {1e-12, 0}), std::domain_error);
}

TEST(MeasurementCovariance, PercentagesWithFloor) {
    Observation z;
    z.range = 0.5;
    z.bearing = -0.4;
    const Mat2 r = measurement_covariance(z, {0.1, 0.0}, {0.05, 0.03});
    EXPECT_DOUBLE_EQ(r(0, 0), 0.05 * 0.05);
    EXPECT_DOUBLE_EQ(r(1, 1), 0.03 * 0.03);
    EXPECT_EQ(r(0, 1), 0.0);
}
