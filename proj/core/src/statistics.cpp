#include "photodet/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "photodet/error.hpp"
#include "photodet/log_real.hpp"
#include "photodet/povm.hpp"

namespace photodet {
namespace {

// N_nc / mu in the finite-mode regime, 0 in the Poissonian limit.
double noise_per_mode(const NoiseModel& noise) {
    if (const auto* finite = std::get_if<FiniteModes>(&noise)) {
        return finite->n_noise / static_cast<double>(finite->modes);
    }
    return 0.0;
}

constexpr double kGeometricTailTarget = 1e-16;
constexpr double kClassicalVarianceTolerance = 1e-10;

}  // namespace

const char* to_string(Provenance provenance) {
    switch (provenance) {
        case Provenance::AnalyticSeries: return "analytic-series";
        case Provenance::OracleMc: return "oracle-mc";
        case Provenance::OracleFock: return "oracle-fock";
    }
    return "unknown";
}

Provenance provenance_from_string(const std::string& tag) {
    if (tag == "analytic-series") return Provenance::AnalyticSeries;
    if (tag == "oracle-mc") return Provenance::OracleMc;
    if (tag == "oracle-fock") return Provenance::OracleFock;
    throw ValidationError("unknown provenance tag '" + tag + "'");
}

std::int64_t default_count_extent(const StateMoments& state, const DetectorConfig& detector) {
    const double mean = count_mean(state, detector);
    const double variance = std::max(0.0, count_variance(state, detector));
    double extent = std::ceil(mean + 12.0 * std::sqrt(variance) + 20.0);
    // Few-mode thermal noise has a geometric tail ~ q^m, q = r/(1+r), that the
    // moment rule alone under-covers (mu = 1, N = 2 leaves ~5e-10).
    const double r = noise_per_mode(detector.noise);
    if (r > 0.0) {
        const double log_q = std::log(r) - std::log1p(r);
        extent += std::ceil(std::log(kGeometricTailTarget) / log_q);
    }
    return static_cast<std::int64_t>(extent);
}

CountDistribution count_distribution(const PhotonStatistics& state, const DetectorConfig& detector,
                                     std::optional<std::int64_t> m_max) {
    validate(detector);
    if (state.pmf.empty()) {
        throw ValidationError("count_distribution: empty photon statistics");
    }
    const std::int64_t extent = m_max ? *m_max : default_count_extent(moments(state), detector);
    if (extent < 0) {
        throw ValidationError("count_distribution: m_max must be >= 0");
    }
    const ConditionalMatrix table = cond_matrix(detector, state.n_max(), extent);

    CountDistribution out;
    out.provenance = Provenance::AnalyticSeries;
    out.pmf.resize(static_cast<std::size_t>(extent + 1));
    for (std::int64_t m = 0; m <= extent; ++m) {
        CompensatedSum acc;
        for (std::int64_t n = 0; n <= state.n_max(); ++n) {
            acc.add(table(m, n) * state.pmf[static_cast<std::size_t>(n)]);
        }
        out.pmf[static_cast<std::size_t>(m)] = acc.value();
    }
    CompensatedSum tail;
    tail.add(state.tail_bound);
    for (std::int64_t n = 0; n <= state.n_max(); ++n) {
        tail.add(state.pmf[static_cast<std::size_t>(n)] * table.column_tail_bounds[static_cast<std::size_t>(n)]);
    }
    out.tail_bound = tail.value();
    if (out.tail_bound > kCountTailWarning) {
        out.warnings.push_back("count distribution tail bound " + std::to_string(out.tail_bound) +
                               " exceeds 1e-6; increase m_max or the state extent");
    }
    return out;
}

double count_mean(const StateMoments& state, const DetectorConfig& detector) {
    validate(detector);
    return detector.efficiency * state.mean_photons + mean_noise(detector.noise);
}

double count_variance(const StateMoments& state, const DetectorConfig& detector) {
    const double mean = count_mean(state, detector);
    const double eta = detector.efficiency;
    const double n_noise = mean_noise(detector.noise);
    return mean + eta * eta * state.normal_ordered_variance +
           noise_per_mode(detector.noise) * (2.0 * eta * state.mean_photons + n_noise);
}

double mandel_q(const StateMoments& state, const DetectorConfig& detector) {
    const double mean = count_mean(state, detector);
    if (!(mean > 0.0)) {
        throw ValidationError("mandel_q: undefined for zero mean count");
    }
    // eta[D + (1/mu)(N/eta)(2<n> + N/eta)] / (<n> + N/eta), multiplied through by eta.
    const double eta = detector.efficiency;
    const double n_noise = mean_noise(detector.noise);
    const double excess = eta * eta * state.normal_ordered_variance +
                          noise_per_mode(detector.noise) * (2.0 * eta * state.mean_photons + n_noise);
    return excess / mean;
}

NoiseThreshold noise_threshold(const StateMoments& state, double efficiency, std::int64_t modes) {
    if (!(efficiency > 0.0) || efficiency > 1.0) {
        throw ValidationError("noise_threshold: efficiency must lie in (0, 1]");
    }
    if (modes < 1) {
        throw ValidationError("noise_threshold: modes must be >= 1");
    }
    const double d = state.normal_ordered_variance;
    // Truncated coherent input leaves D ~ -1e-13; that is not a sub-Poissonian state.
    if (d >= -kClassicalVarianceTolerance * std::max(1.0, state.mean_photons)) {
        return AlreadySuperPoissonian{};
    }
    // eta (sqrt(<n>^2 - mu D) - <n>), rationalized.
    const double mu = static_cast<double>(modes);
    const double n = state.mean_photons;
    const double root = std::sqrt(n * n - mu * d);
    return efficiency * (-mu * d) / (root + n);
}

}  // namespace photodet
