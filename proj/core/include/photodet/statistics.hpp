#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "photodet/model.hpp"
#include "photodet/states.hpp"

namespace photodet {

enum class Provenance { AnalyticSeries, OracleMc, OracleFock };

const char* to_string(Provenance provenance);
/// Inverse of to_string; throws ValidationError on unknown tags.
Provenance provenance_from_string(const std::string& tag);

/// Truncated photocount distribution P_0..P_{m_max}.
struct CountDistribution {
    std::vector<double> pmf;
    double tail_bound = 0.0;
    Provenance provenance = Provenance::AnalyticSeries;
    std::vector<std::string> warnings;

    std::int64_t m_max() const { return static_cast<std::int64_t>(pmf.size()) - 1; }
};

/// Combined tail bound above which count_distribution reports a warning.
inline constexpr double kCountTailWarning = 1e-6;

/// ceil(mean + 12 sqrt(variance) + 20) of the photocount distribution, plus
/// ceil(ln(1e-16) / ln(r/(1+r))) for finite-mode noise with r = N_nc/mu.
std::int64_t default_count_extent(const StateMoments& state, const DetectorConfig& detector);

/// P_m = sum_n P(m|n) p_n for m = 0..m_max. Without m_max, uses
/// default_count_extent of the state's moments.
CountDistribution count_distribution(const PhotonStatistics& state, const DetectorConfig& detector,
                                     std::optional<std::int64_t> m_max = std::nullopt);

/// eta <n> + N_nc; the same in both noise regimes.
double count_mean(const StateMoments& state, const DetectorConfig& detector);

/// mean + eta^2 <:Delta n^2:> + (N_nc/mu)(2 eta <n> + N_nc). The last term
/// vanishes in the Poissonian limit.
double count_variance(const StateMoments& state, const DetectorConfig& detector);

/// Mandel parameter of the photocounts from the closed forms. Equals
/// count_variance / count_mean - 1. Throws ValidationError when the mean
/// count is zero.
double mandel_q(const StateMoments& state, const DetectorConfig& detector);

/// Returned by noise_threshold when <:Delta n^2:> >= 0: Q is already
/// nonnegative without noise, so no sub-Poissonian region exists.
struct AlreadySuperPoissonian {
    bool operator==(const AlreadySuperPoissonian&) const = default;
};

using NoiseThreshold = std::variant<double, AlreadySuperPoissonian>;

/// Noise level at which the finite-mode Mandel parameter crosses zero.
NoiseThreshold noise_threshold(const StateMoments& state, double efficiency, std::int64_t modes);

}  // namespace photodet
