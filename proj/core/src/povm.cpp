#include "photodet/povm.hpp"

#include <algorithm>
#include <cmath>

#include "photodet/error.hpp"
#include "photodet/log_real.hpp"
#include "photodet/specfun.hpp"

namespace photodet {

using specfun::log_factorial;
using specfun::log_pow;

namespace {

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

void check_indices(std::int64_t m, std::int64_t n) {
    if (m < 0 || n < 0) {
        throw ValidationError("conditional probability: negative count or photon number");
    }
}

void check_channel(double efficiency, double n_noise) {
    if (!std::isfinite(efficiency) || efficiency < 0.0 || efficiency > 1.0) {
        throw ValidationError("conditional probability: efficiency must lie in [0, 1]");
    }
    if (!std::isfinite(n_noise) || n_noise < 0.0) {
        throw ValidationError("conditional probability: n_noise must be finite and >= 0");
    }
}

double binomial_loss(std::int64_t m, std::int64_t n, double efficiency) {
    if (m > n) {
        return 0.0;
    }
    const LogReal c = specfun::log_binomial(n, m);
    const double log_p = c.log_magnitude + log_pow(efficiency, static_cast<double>(m)) +
                         log_pow(1.0 - efficiency, static_cast<double>(n - m));
    return clamp_probability(LogReal::from_log(log_p).value());
}

}  // namespace

SignalAmplitudes::SignalAmplitudes(std::vector<std::complex<double>> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw ValidationError("signal: at least one mode required");
    }
    for (const auto& a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ValidationError("signal: amplitudes must be finite");
        }
        total_intensity_ += std::norm(a);
    }
    if (!std::isfinite(total_intensity_)) {
        throw ValidationError("signal: total intensity overflows");
    }
}

SignalAmplitudes SignalAmplitudes::from_intensity(double intensity) {
    if (!std::isfinite(intensity) || intensity < 0.0) {
        throw ValidationError("signal: intensity must be finite and >= 0");
    }
    return SignalAmplitudes({std::complex<double>(std::sqrt(intensity), 0.0)});
}

double povm_symbol(std::int64_t n, const SignalAmplitudes& signal, const DetectorConfig& detector) {
    return povm_symbol(n, signal.total_intensity(), detector);
}

double povm_symbol(std::int64_t n, double total_intensity, const DetectorConfig& detector) {
    if (n < 0) {
        throw ValidationError("povm_symbol: negative count");
    }
    if (!std::isfinite(total_intensity) || total_intensity < 0.0) {
        throw ValidationError("povm_symbol: intensity must be finite and >= 0");
    }
    validate(detector);
    const double s = detector.efficiency * total_intensity;
    const double n_noise = mean_noise(detector.noise);
    const auto* finite = std::get_if<FiniteModes>(&detector.noise);

    if (!finite || n_noise == 0.0) {
        return clamp_probability(std::exp(specfun::log_poisson(n, s + n_noise)));
    }

    const auto modes = static_cast<double>(finite->modes);
    const double r = n_noise / modes;
    const double log1p_r = std::log1p(r);
    const double nd = static_cast<double>(n);
    const LogReal lag = specfun::laguerre(n, modes - 1.0, -s / (r * (1.0 + r)));
    const double log_p = nd * std::log(r) - (nd + modes) * log1p_r - s / (1.0 + r) + lag.log_magnitude;
    return clamp_probability(LogReal::from_log(log_p, lag.sign).value());
}

double cond_prob_poisson(std::int64_t m, std::int64_t n, double efficiency, double n_noise) {
    check_indices(m, n);
    check_channel(efficiency, n_noise);

    if (efficiency < kZeroEfficiencyCutoff) {
        return clamp_probability(std::exp(specfun::log_poisson(m, n_noise)));
    }
    if (n_noise == 0.0) {
        return binomial_loss(m, n, efficiency);
    }

    // At efficiency 1 the argument vanishes and L_k^a(0) = C(k+a, k) gives
    // the shifted Poisson law.
    const double x = n_noise * (efficiency - 1.0) / efficiency;
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    double log_p = -n_noise;
    LogReal lag;
    if (m > n) {
        lag = specfun::laguerre(n, md - nd, x);
        log_p += (md - nd) * std::log(n_noise) + nd * std::log(efficiency) + log_factorial(n) -
                 log_factorial(m);
    } else {
        lag = specfun::laguerre(m, nd - md, x);
        log_p += log_pow(1.0 - efficiency, nd - md) + md * std::log(efficiency);
    }
    return clamp_probability(LogReal::from_log(log_p + lag.log_magnitude, lag.sign).value());
}

double cond_prob_finite(std::int64_t m, std::int64_t n, double efficiency, double n_noise,
                        std::int64_t modes) {
    check_indices(m, n);
    check_channel(efficiency, n_noise);
    if (modes < 1) {
        throw ValidationError("cond_prob_finite: modes must be >= 1");
    }
    if (n_noise == 0.0) {
        return cond_prob_poisson(m, n, efficiency, 0.0);
    }

    // The closed form r^m d^n (1+r)^-(n+m+mu) C(m+mu-1, m) 2F1(-n,-m; mu; eta/(r d))
    // is summed as sum_k [n!/(n-k)!][m!/(m-k)!] / ((mu)_k k!) eta^k r^(m-k) d^(n-k),
    // which stays finite as d = 1 + r - eta -> 0. All terms are nonnegative.
    const auto mu = static_cast<double>(modes);
    const double r = n_noise / mu;
    const double d = (1.0 - efficiency) + r;
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double log_r = std::log(r);
    const double log_d = std::log(d);

    const double prefactor = specfun::log_binomial_shifted(m, mu - 1.0) - (nd + md + mu) * std::log1p(r);

    LogSum sum;
    double log_term = md * log_r + nd * log_d;
    sum.add_log(log_term);
    if (efficiency > 0.0) {
        const double log_eta = std::log(efficiency);
        const std::int64_t k_max = std::min(m, n);
        for (std::int64_t k = 0; k < k_max; ++k) {
            const auto kd = static_cast<double>(k);
            log_term += std::log(nd - kd) + std::log(md - kd) - std::log(mu + kd) - std::log(kd + 1.0) +
                        log_eta - log_r - log_d;
            sum.add_log(log_term);
        }
    }
    const LogReal total = sum.result();
    return clamp_probability(LogReal::from_log(prefactor + total.log_magnitude, total.sign).value());
}

double cond_prob(std::int64_t m, std::int64_t n, const DetectorConfig& detector) {
    validate(detector);
    if (const auto* finite = std::get_if<FiniteModes>(&detector.noise)) {
        return cond_prob_finite(m, n, detector.efficiency, finite->n_noise, finite->modes);
    }
    return cond_prob_poisson(m, n, detector.efficiency, mean_noise(detector.noise));
}

ConditionalMatrix cond_matrix(const DetectorConfig& detector, std::int64_t n_max, std::int64_t m_max) {
    if (n_max < 0 || m_max < 0) {
        throw ValidationError("cond_matrix: extents must be >= 0");
    }
    validate(detector);
    ConditionalMatrix out;
    out.detector = detector;
    out.m_max = m_max;
    out.n_max = n_max;
    out.entries.assign(static_cast<std::size_t>((m_max + 1) * (n_max + 1)), 0.0);
    out.column_tail_bounds.assign(static_cast<std::size_t>(n_max + 1), 0.0);
    for (std::int64_t n = 0; n <= n_max; ++n) {
        CompensatedSum column;
        for (std::int64_t m = 0; m <= m_max; ++m) {
            const double p = cond_prob(m, n, detector);
            out.entries[static_cast<std::size_t>(m * (n_max + 1) + n)] = p;
            column.add(p);
        }
        out.column_tail_bounds[static_cast<std::size_t>(n)] = std::max(0.0, 1.0 - column.value());
    }
    return out;
}

}  // namespace photodet
