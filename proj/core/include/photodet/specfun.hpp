#pragma once

#include <cstdint>

#include "photodet/log_real.hpp"

// Special functions in sign/log form. Every routine here is a pure function
// and safe to call concurrently.
namespace photodet::specfun {

/// ln(n!). Cached for n < 4096, Stirling series above.
double log_factorial(std::int64_t n);

/// ln C(n, k); zero (sign 0) when k is outside [0, n].
LogReal log_binomial(std::int64_t n, std::int64_t k);

/// ln C(n + a, n) for real a > -1, i.e. ln[(a+1)(a+2)...(a+n) / n!].
double log_binomial_shifted(std::int64_t n, double a);

/// ln of the rising factorial (c)_k = c (c+1) ... (c+k-1), c > 0.
double log_pochhammer(double c, std::int64_t k);

/// exponent * ln(base) with 0^0 = 1, i.e. returns 0 when exponent == 0 and
/// -inf for base == 0 with a positive exponent. Requires base >= 0.
double log_pow(double base, double exponent);

/// Generalized Laguerre polynomial L_n^a(x) by its explicit series.
///
/// For x <= 0 every term is nonnegative and the sum is cancellation-free.
/// For x > 0 the series alternates and no accuracy guarantee is made beyond
/// what double precision cancellation allows. Throws ValidationError for
/// a <= -1.
LogReal laguerre(std::int64_t n, double a, double x);

/// The terminating hypergeometric sum 2F1(-n, -m; c; z), c > 0.
/// Cancellation-free for z >= 0; symmetric in (n, m) bit for bit.
LogReal hyp2f1_terminating(std::int64_t n, std::int64_t m, double c, double z);

/// ln Pois(k; mean). Handles mean == 0 (returns 0 for k == 0, -inf otherwise).
double log_poisson(std::int64_t k, double mean);

}  // namespace photodet::specfun
