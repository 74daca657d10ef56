#include "photodet/states.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "photodet/error.hpp"
#include "photodet/log_real.hpp"
#include "photodet/specfun.hpp"

namespace photodet {
namespace {

constexpr double kClipFloor = -1e-12;
constexpr double kMassSlack = 1e-9;
constexpr double kMomentTailWarning = 1e-6;

// P(N > n) for N ~ Pois(mean).
double poisson_tail(double mean, std::int64_t n) {
    if (mean == 0.0) {
        return 0.0;
    }
    return boost::math::gamma_p(static_cast<double>(n) + 1.0, mean);
}

}  // namespace

double PhotonStatistics::mass() const {
    CompensatedSum sum;
    for (double p : pmf) sum.add(p);
    return sum.value();
}

PhotonStatistics coherent_pmf(double intensity, std::optional<std::int64_t> n_max) {
    if (!std::isfinite(intensity) || intensity < 0.0) {
        throw ValidationError("coherent state: intensity must be finite and >= 0");
    }
    std::int64_t extent = 0;
    if (n_max) {
        if (*n_max < 0) throw ValidationError("coherent state: n_max must be >= 0");
        extent = *n_max;
    } else {
        extent = static_cast<std::int64_t>(std::floor(intensity));
        while (poisson_tail(intensity, extent) > kStateTailTarget) ++extent;
    }
    PhotonStatistics out;
    out.pmf.resize(static_cast<std::size_t>(extent + 1));
    for (std::int64_t n = 0; n <= extent; ++n) {
        out.pmf[static_cast<std::size_t>(n)] = std::exp(specfun::log_poisson(n, intensity));
    }
    out.tail_bound = poisson_tail(intensity, extent);
    return out;
}

PhotonStatistics fock_pmf(std::int64_t n) {
    if (n < 0) {
        throw ValidationError("fock state: photon number must be >= 0");
    }
    PhotonStatistics out;
    out.pmf.assign(static_cast<std::size_t>(n + 1), 0.0);
    out.pmf.back() = 1.0;
    return out;
}

PhotonStatistics thermal_pmf(double mean, std::optional<std::int64_t> n_max) {
    if (!std::isfinite(mean) || mean < 0.0) {
        throw ValidationError("thermal state: mean must be finite and >= 0");
    }
    if (mean == 0.0) {
        return fock_pmf(0);
    }
    const double log_ratio = std::log(mean) - std::log1p(mean);
    std::int64_t extent = 0;
    if (n_max) {
        if (*n_max < 0) throw ValidationError("thermal state: n_max must be >= 0");
        extent = *n_max;
    } else {
        // tail after n is ratio^(n+1)
        extent = std::max<std::int64_t>(
            0, static_cast<std::int64_t>(std::ceil(std::log(kStateTailTarget) / log_ratio)) - 1);
        while (std::exp(static_cast<double>(extent + 1) * log_ratio) > kStateTailTarget) ++extent;
    }
    PhotonStatistics out;
    out.pmf.resize(static_cast<std::size_t>(extent + 1));
    const double log_p0 = -std::log1p(mean);
    for (std::int64_t n = 0; n <= extent; ++n) {
        out.pmf[static_cast<std::size_t>(n)] = std::exp(log_p0 + static_cast<double>(n) * log_ratio);
    }
    out.tail_bound = std::exp(static_cast<double>(extent + 1) * log_ratio);
    return out;
}

StateMoments moments(std::span<const double> pmf, double tail_bound) {
    CompensatedSum first;
    CompensatedSum second;
    for (std::size_t n = 0; n < pmf.size(); ++n) {
        const auto nd = static_cast<double>(n);
        first.add(nd * pmf[n]);
        second.add(nd * nd * pmf[n]);
    }
    StateMoments out;
    out.mean_photons = first.value();
    out.normal_ordered_variance = second.value() - out.mean_photons - out.mean_photons * out.mean_photons;
    out.truncation_warning = tail_bound > kMomentTailWarning;
    return out;
}

StateMoments moments(const PhotonStatistics& state) {
    return moments(state.pmf, state.tail_bound);
}

PhotonStatistics pmf_from_values(std::span<const double> values, bool renormalize) {
    if (values.empty()) {
        throw ValidationError("pmf: at least one value required");
    }
    PhotonStatistics out;
    out.pmf.reserve(values.size());
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ValidationError("pmf: values must be finite");
        }
        if (v < kClipFloor) {
            throw ValidationError("pmf: negative probability");
        }
        out.pmf.push_back(std::max(v, 0.0));
    }
    double mass = out.mass();
    if (renormalize) {
        if (mass <= 0.0) {
            throw ValidationError("pmf: cannot renormalize zero mass");
        }
        out.normalization_factor = 1.0 / mass;
        for (double& p : out.pmf) p /= mass;
        mass = out.mass();
    } else if (mass > 1.0 + kMassSlack) {
        throw ValidationError("pmf: total mass exceeds 1");
    }
    out.tail_bound = std::max(0.0, 1.0 - mass);
    return out;
}

}  // namespace photodet
