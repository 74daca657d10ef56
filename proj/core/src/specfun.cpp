#include "photodet/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "photodet/error.hpp"

namespace photodet::specfun {
namespace {

constexpr std::int64_t kFactorialCacheSize = 4096;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const std::array<double, kFactorialCacheSize>& factorial_cache() {
    static const std::array<double, kFactorialCacheSize> cache = [] {
        std::array<double, kFactorialCacheSize> table{};
        long double acc = 0.0L;
        table[0] = 0.0;
        for (std::int64_t k = 1; k < kFactorialCacheSize; ++k) {
            acc += std::log(static_cast<long double>(k));
            table[k] = static_cast<double>(acc);
        }
        return table;
    }();
    return cache;
}

// ln Gamma(x) for x > 4096 by the Stirling series; the first omitted term is
// below 1e-25 there.
double stirling_log_gamma(long double x) {
    const long double inv = 1.0L / x;
    const long double inv2 = inv * inv;
    const long double series =
        inv * (1.0L / 12.0L - inv2 * (1.0L / 360.0L - inv2 * (1.0L / 1260.0L - inv2 / 1680.0L)));
    const long double half_log_two_pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
    return static_cast<double>((x - 0.5L) * std::log(x) - x + half_log_two_pi + series);
}

}  // namespace

double log_factorial(std::int64_t n) {
    if (n < 0) {
        throw ValidationError("log_factorial: negative argument");
    }
    if (n < kFactorialCacheSize) {
        return factorial_cache()[static_cast<std::size_t>(n)];
    }
    return stirling_log_gamma(static_cast<long double>(n) + 1.0L);
}

LogReal log_binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) {
        throw ValidationError("log_binomial: negative n");
    }
    if (k < 0 || k > n) {
        return LogReal::zero();
    }
    return LogReal::from_log(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

double log_binomial_shifted(std::int64_t n, double a) {
    if (a <= -1.0) {
        throw ValidationError("log_binomial_shifted: requires a > -1");
    }
    if (a == std::floor(a) && a + static_cast<double>(n) < static_cast<double>(kFactorialCacheSize)) {
        const auto ai = static_cast<std::int64_t>(a);
        return log_factorial(n + ai) - log_factorial(n) - log_factorial(ai);
    }
    long double acc = 0.0L;
    const long double al = a;
    for (std::int64_t j = 1; j <= n; ++j) {
        acc += std::log1p(al / static_cast<long double>(j));
    }
    return static_cast<double>(acc);
}

double log_pochhammer(double c, std::int64_t k) {
    double acc = 0.0;
    for (std::int64_t j = 0; j < k; ++j) {
        acc += std::log(c + static_cast<double>(j));
    }
    return acc;
}

double log_pow(double base, double exponent) {
    if (exponent == 0.0) {
        return 0.0;
    }
    if (base == 0.0) {
        return kNegInf;
    }
    return exponent * std::log(base);
}

LogReal laguerre(std::int64_t n, double a, double x) {
    if (n < 0) {
        throw ValidationError("laguerre: negative degree");
    }
    if (!(a > -1.0) || !std::isfinite(a) || !std::isfinite(x)) {
        throw ValidationError("laguerre: requires finite a > -1 and finite x");
    }
    // t_k = C(n+a, n-k) (-x)^k / k!, generated by the term ratio
    // t_{k+1}/t_k = (n-k)(-x) / ((a+k+1)(k+1)).
    // Ratios accumulate in long double: log magnitudes reach thousands at
    // n = 500, |x| = 1e4, and double rounding there alone is ~1e-13 per step.
    long double log_term = log_binomial_shifted(n, a);
    LogSum sum;
    sum.add_log(static_cast<double>(log_term));
    if (x == 0.0) {
        return sum.result();
    }
    const long double log_abs_x = std::log(std::abs(static_cast<long double>(x)));
    const long double al = a;
    const bool alternating = x > 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
        const auto kl = static_cast<long double>(k);
        log_term += std::log(static_cast<long double>(n - k)) + log_abs_x - std::log(al + kl + 1.0L) -
                    std::log(kl + 1.0L);
        const int sign = (alternating && (k % 2 == 0)) ? -1 : 1;
        sum.add_log(static_cast<double>(log_term), sign);
    }
    return sum.result();
}

LogReal hyp2f1_terminating(std::int64_t n, std::int64_t m, double c, double z) {
    if (n < 0 || m < 0) {
        throw ValidationError("hyp2f1_terminating: negative degree");
    }
    if (!(c > 0.0) || !std::isfinite(z)) {
        throw ValidationError("hyp2f1_terminating: requires c > 0 and finite z");
    }
    const std::int64_t lo = std::min(n, m);
    const std::int64_t hi = std::max(n, m);
    LogSum sum;
    sum.add(LogReal::one());
    if (z == 0.0 || lo == 0) {
        return sum.result();
    }
    const long double log_abs_z = std::log(std::abs(static_cast<long double>(z)));
    const long double cl = c;
    const bool alternating = z < 0.0;
    long double log_term = 0.0L;
    for (std::int64_t k = 0; k < lo; ++k) {
        const auto kl = static_cast<long double>(k);
        log_term += std::log(static_cast<long double>(lo - k)) + std::log(static_cast<long double>(hi - k)) +
                    log_abs_z - std::log(cl + kl) - std::log(kl + 1.0L);
        const int sign = (alternating && (k % 2 == 0)) ? -1 : 1;
        sum.add_log(static_cast<double>(log_term), sign);
    }
    return sum.result();
}

double log_poisson(std::int64_t k, double mean) {
    if (k < 0) {
        return kNegInf;
    }
    if (mean == 0.0) {
        return k == 0 ? 0.0 : kNegInf;
    }
    return static_cast<double>(k) * std::log(mean) - mean - log_factorial(k);
}

}  // namespace photodet::specfun
