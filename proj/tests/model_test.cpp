#include "photodet/model.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "photodet/error.hpp"

using namespace photodet;

TEST(mode_count, examples) {
    EXPECT_EQ(estimate_mode_count({1e15, 1e-9}), 1000000);
    EXPECT_EQ(estimate_mode_count({1.0, 1.0}), 1);
    EXPECT_EQ(estimate_mode_count({1e15, 1e-16}), 1);
    EXPECT_EQ(estimate_mode_count({10.0, 0.26}), 3);
}

TEST(mode_count, rejects_bad_input) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(estimate_mode_count({nan, 1.0}), ValidationError);
    EXPECT_THROW(estimate_mode_count({1.0, INFINITY}), ValidationError);
    EXPECT_THROW(estimate_mode_count({0.0, 1.0}), ValidationError);
    EXPECT_THROW(estimate_mode_count({1e30, 1.0}), ValidationError);
}

TEST(mode_count, monotone_in_both_arguments) {
    std::int64_t previous = 0;
    for (double t = 1e-12; t < 1e-6; t *= 1.7) {
        const std::int64_t mu = estimate_mode_count({3.3e12, t});
        EXPECT_GE(mu, previous);
        previous = mu;
    }
    previous = 0;
    for (double w = 1.0; w < 1e9; w *= 2.3) {
        const std::int64_t mu = estimate_mode_count({w, 4e-3});
        EXPECT_GE(mu, previous);
        previous = mu;
    }
}

TEST(critical_time, examples) {
    EXPECT_DOUBLE_EQ(critical_detection_time(1.0, 1e15), 1e-15);
    EXPECT_EQ(critical_detection_time(0.0, 1e15), 0.0);
    EXPECT_DOUBLE_EQ(critical_detection_time(5.0, 10.0), 0.5);
    EXPECT_THROW(critical_detection_time(1.0, 0.0), ValidationError);
    EXPECT_THROW(critical_detection_time(1.0, -3.0), ValidationError);
    EXPECT_THROW(critical_detection_time(NAN, 1.0), ValidationError);
}

TEST(critical_time, linear_in_noise) {
    const BathSpec bath{2.0e14, 3.0e-10};
    const auto mu = static_cast<double>(estimate_mode_count(bath));
    const double base = critical_detection_time(mu, bath.bandwidth);
    for (double x : {0.5, 2.0, 7.0}) {
        EXPECT_DOUBLE_EQ(critical_detection_time(mu * x, bath.bandwidth) / base, x);
    }
}

TEST(poisson_limit, examples) {
    EXPECT_TRUE(poisson_limit_applicable(FiniteModes{1.0, 1000000}, 1e-3));
    EXPECT_FALSE(poisson_limit_applicable(FiniteModes{1.0, 1}, 1e-3));
    EXPECT_TRUE(poisson_limit_applicable(PoissonianLimit{7.0}, 1e-9));
    EXPECT_TRUE(poisson_limit_applicable(FiniteModes{0.5, 1000}));
    EXPECT_FALSE(poisson_limit_applicable(FiniteModes{2.0, 1000}));
    EXPECT_THROW(poisson_limit_applicable(FiniteModes{1.0, 1}, 0.0), ValidationError);
}

TEST(detector, validation) {
    EXPECT_NO_THROW(validate(DetectorConfig{0.0, PoissonianLimit{0.0}}));
    EXPECT_NO_THROW(validate(DetectorConfig{1.0, FiniteModes{3.0, 2}}));
    EXPECT_THROW(validate(DetectorConfig{1.1, PoissonianLimit{0.0}}), ValidationError);
    EXPECT_THROW(validate(DetectorConfig{-0.1, PoissonianLimit{0.0}}), ValidationError);
    EXPECT_THROW(validate(DetectorConfig{0.5, PoissonianLimit{-1.0}}), ValidationError);
    EXPECT_THROW(validate(DetectorConfig{0.5, FiniteModes{1.0, 0}}), ValidationError);
    EXPECT_DOUBLE_EQ(mean_noise(FiniteModes{2.5, 3}), 2.5);
    EXPECT_TRUE(is_finite_modes(FiniteModes{}));
    EXPECT_FALSE(is_finite_modes(PoissonianLimit{}));
}
