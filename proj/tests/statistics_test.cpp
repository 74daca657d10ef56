#include "photodet/statistics.hpp"

#include <cmath>
#include <variant>

#include <gtest/gtest.h>

#include "photodet/error.hpp"
#include "photodet/povm.hpp"
#include "photodet/specfun.hpp"

using namespace photodet;

namespace {

DetectorConfig poissonian(double eta, double n_noise) { return {eta, PoissonianLimit{n_noise}}; }
DetectorConfig finite(double eta, double n_noise, std::int64_t modes) { return {eta, FiniteModes{n_noise, modes}}; }

struct PmfMoments {
    double mean;
    double variance;
};

PmfMoments pmf_moments(const CountDistribution& c) {
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t m = 0; m < c.pmf.size(); ++m) {
        m1 += static_cast<double>(m) * c.pmf[m];
        m2 += static_cast<double>(m * m) * c.pmf[m];
    }
    return {m1, m2 - m1 * m1};
}

// Bisection on Q(N) over [0, hi]; Q is negative at 0 for sub-Poissonian input.
double bracket_threshold(const StateMoments& st, double eta, std::int64_t modes) {
    double lo = 0.0;
    double hi = 1.0;
    while (mandel_q(st, finite(eta, hi, modes)) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (lo == mid || hi == mid) break;
        (mandel_q(st, finite(eta, mid, modes)) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST(count_distribution, examples) {
    const CountDistribution noise_only = count_distribution(fock_pmf(0), poissonian(1.0, 0.7), 30);
    for (int m = 0; m <= 30; ++m) {
        EXPECT_NEAR(noise_only.pmf[m], std::exp(specfun::log_poisson(m, 0.7)), 1e-16);
    }
    EXPECT_EQ(noise_only.provenance, Provenance::AnalyticSeries);

    const CountDistribution bernoulli = count_distribution(fock_pmf(1), poissonian(0.8, 0.0), 5);
    EXPECT_NEAR(bernoulli.pmf[0], 0.2, 1e-16);
    EXPECT_NEAR(bernoulli.pmf[1], 0.8, 1e-16);
    for (int m = 2; m <= 5; ++m) EXPECT_EQ(bernoulli.pmf[m], 0.0);

    const DetectorConfig d = finite(0.5, 1.0, 2);
    const CountDistribution coherent = count_distribution(coherent_pmf(2.0, 80), d, 60);
    for (int m = 0; m <= 60; ++m) {
        EXPECT_NEAR(coherent.pmf[m], povm_symbol(m, 2.0, d), 1e-9) << m;
    }
}

TEST(count_distribution, normalized_with_tail) {
    for (const DetectorConfig& d : {poissonian(0.5, 1.0), finite(0.5, 1.0, 2), finite(0.9, 2.0, 1)}) {
        for (const PhotonStatistics& st : {fock_pmf(3), coherent_pmf(2.0), thermal_pmf(1.0)}) {
            const CountDistribution c = count_distribution(st, d);
            double sum = 0.0;
            for (double p : c.pmf) {
                EXPECT_GE(p, 0.0);
                sum += p;
            }
            EXPECT_NEAR(sum + c.tail_bound, 1.0, 1e-9);
            EXPECT_LE(c.tail_bound, 1e-10);
            EXPECT_TRUE(c.warnings.empty());
        }
    }
}

TEST(count_distribution, warns_on_short_extent) {
    const CountDistribution c = count_distribution(coherent_pmf(10.0), poissonian(1.0, 1.0), 5);
    EXPECT_GT(c.tail_bound, kCountTailWarning);
    EXPECT_FALSE(c.warnings.empty());
}

TEST(count_mean, examples) {
    EXPECT_DOUBLE_EQ(count_mean({2.0, 0.0}, poissonian(0.5, 1.0)), 2.0);
    EXPECT_DOUBLE_EQ(count_mean({0.0, 0.0}, poissonian(0.9, 0.3)), 0.3);
    EXPECT_DOUBLE_EQ(count_mean(moments(fock_pmf(1)), poissonian(1.0, 0.0)), 1.0);
    EXPECT_DOUBLE_EQ(count_mean({2.0, 0.0}, finite(0.5, 1.0, 3)), 2.0);
}

TEST(count_variance, examples) {
    EXPECT_DOUBLE_EQ(count_variance({2.0, 0.0}, poissonian(0.5, 1.0)), 2.0);
    EXPECT_DOUBLE_EQ(count_variance({2.0, 0.0}, finite(0.5, 1.0, 2)), 3.5);
    EXPECT_DOUBLE_EQ(count_variance(moments(fock_pmf(1)), poissonian(1.0, 0.0)), 0.0);

    const DetectorConfig d = finite(0.5, 1.0, 2);
    const CountDistribution c = count_distribution(coherent_pmf(2.0), d);
    EXPECT_NEAR(pmf_moments(c).variance, 3.5, 1e-8);
}

TEST(count_moments, match_distribution_moments) {
    for (const DetectorConfig& d : {poissonian(0.5, 1.0), finite(0.5, 1.0, 2), finite(0.8, 0.3, 7), poissonian(1.0, 0.0)}) {
        for (const PhotonStatistics& st :
             {fock_pmf(0), fock_pmf(1), fock_pmf(3), coherent_pmf(2.0), thermal_pmf(1.0)}) {
            const StateMoments sm = moments(st);
            const CountDistribution c = count_distribution(st, d);
            const PmfMoments pm = pmf_moments(c);
            EXPECT_NEAR(pm.mean, count_mean(sm, d), 1e-8);
            EXPECT_NEAR(pm.variance, count_variance(sm, d), 1e-8);
        }
    }
}

TEST(mandel_q, examples) {
    const StateMoments one = moments(fock_pmf(1));
    EXPECT_DOUBLE_EQ(mandel_q(one, poissonian(1.0, 0.0)), -1.0);
    EXPECT_DOUBLE_EQ(mandel_q(one, poissonian(1.0, 1.0)), -0.5);
    EXPECT_DOUBLE_EQ(mandel_q(one, finite(1.0, 1.0, 4)), -0.125);

    const DetectorConfig d = finite(1.0, 1.0, 4);
    const PmfMoments pm = pmf_moments(count_distribution(fock_pmf(1), d));
    EXPECT_NEAR(pm.variance / pm.mean - 1.0, -0.125, 1e-9);
}

TEST(mandel_q, is_variance_over_mean_minus_one) {
    for (const DetectorConfig& d : {poissonian(0.3, 2.0), finite(0.3, 2.0, 3), finite(0.0, 0.5, 2), poissonian(0.0, 0.5)}) {
        for (const StateMoments& sm : {StateMoments{1.0, -1.0}, StateMoments{4.0, 2.5}, StateMoments{0.0, 0.0}}) {
            EXPECT_NEAR(mandel_q(sm, d), count_variance(sm, d) / count_mean(sm, d) - 1.0, 1e-14);
        }
    }
}

TEST(mandel_q, undefined_without_counts) {
    EXPECT_THROW(mandel_q(moments(fock_pmf(1)), poissonian(0.0, 0.0)), ValidationError);
    EXPECT_THROW(mandel_q(moments(fock_pmf(0)), finite(0.5, 0.0, 2)), ValidationError);
}

TEST(mandel_q, finite_modes_never_below_poissonian) {
    for (int n : {1, 2, 5}) {
        const StateMoments sm = moments(fock_pmf(n));
        for (double eta : {0.2, 0.7, 1.0}) {
            for (double n_noise : {0.01, 0.5, 3.0, 40.0}) {
                for (std::int64_t mu : {1, 4, 100}) {
                    EXPECT_GE(mandel_q(sm, finite(eta, n_noise, mu)), mandel_q(sm, poissonian(eta, n_noise)));
                }
            }
        }
    }
}

TEST(mandel_q, nonclassicality_decays_toward_zero) {
    const StateMoments one = moments(fock_pmf(1));
    double previous = -INFINITY;
    for (double n_noise : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
        const double q = mandel_q(one, poissonian(0.9, n_noise));
        EXPECT_LT(q, 0.0);
        EXPECT_GT(q, previous);
        previous = q;
    }
    EXPECT_LT(std::abs(previous), 2e-3);
}

TEST(noise_threshold, examples) {
    const StateMoments one = moments(fock_pmf(1));
    EXPECT_NEAR(std::get<double>(noise_threshold(one, 1.0, 1)), std::sqrt(2.0) - 1.0, 1e-15);
    EXPECT_NEAR(std::get<double>(noise_threshold(one, 1.0, 4)), std::sqrt(5.0) - 1.0, 1e-15);
    EXPECT_NEAR(bracket_threshold(one, 1.0, 1), std::sqrt(2.0) - 1.0, 1e-12);
    EXPECT_NEAR(bracket_threshold(one, 1.0, 4), std::sqrt(5.0) - 1.0, 1e-12);

    EXPECT_TRUE(std::holds_alternative<AlreadySuperPoissonian>(noise_threshold({2.0, 0.0}, 0.7, 3)));
    EXPECT_TRUE(std::holds_alternative<AlreadySuperPoissonian>(noise_threshold({1.0, 1.0}, 1.0, 1)));
    EXPECT_THROW(noise_threshold(one, 0.0, 1), ValidationError);
    EXPECT_THROW(noise_threshold(one, 1.0, 0), ValidationError);
}

TEST(noise_threshold, zeroes_mandel_q_and_changes_sign) {
    for (int n : {1, 2, 5}) {
        const StateMoments sm = moments(fock_pmf(n));
        for (std::int64_t mu : {1, 4, 100}) {
            for (double eta : {0.5, 1.0}) {
                const double star = std::get<double>(noise_threshold(sm, eta, mu));
                EXPECT_GE(star, 0.0);
                EXPECT_NEAR(mandel_q(sm, finite(eta, star, mu)), 0.0, 1e-12);
                EXPECT_LT(mandel_q(sm, finite(eta, 0.99 * star, mu)), 0.0);
                EXPECT_GT(mandel_q(sm, finite(eta, 1.01 * star, mu)), 0.0);
                EXPECT_NEAR(star, bracket_threshold(sm, eta, mu), 1e-10 * star);
            }
        }
    }
}
