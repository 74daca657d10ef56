#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace photodet {

/// Truncated photon-number distribution p_0..p_{n_max}.
///
/// Invariants: p_n >= 0, sum p_n <= 1 and 1 - sum p_n <= tail_bound.
struct PhotonStatistics {
    std::vector<double> pmf;
    double tail_bound = 0.0;
    /// Factor applied by pmf_from_values(..., renormalize = true); 1 otherwise.
    double normalization_factor = 1.0;

    std::int64_t n_max() const { return static_cast<std::int64_t>(pmf.size()) - 1; }
    double mass() const;
};

/// <n> and the normal-ordered variance <:Delta n^2:>.
struct StateMoments {
    double mean_photons = 0.0;
    double normal_ordered_variance = 0.0;
    /// Set when the input's tail bound exceeds 1e-6 and the moments may be
    /// biased by truncation.
    bool truncation_warning = false;
};

/// Truncation target for generated states.
inline constexpr double kStateTailTarget = 1e-14;

/// Poisson photon statistics of a coherent state with |alpha|^2 = intensity.
/// Without n_max, truncates at the smallest n whose tail is <= 1e-14.
PhotonStatistics coherent_pmf(double intensity, std::optional<std::int64_t> n_max = std::nullopt);

PhotonStatistics fock_pmf(std::int64_t n);

/// Bose-Einstein statistics of one thermal mode.
PhotonStatistics thermal_pmf(double mean, std::optional<std::int64_t> n_max = std::nullopt);

StateMoments moments(const PhotonStatistics& state);
StateMoments moments(std::span<const double> pmf, double tail_bound = 0.0);

/// Validates user-supplied probabilities. Entries in [-1e-12, 0) are
/// clipped to 0; anything more negative, or a total above 1 + 1e-9 without
/// renormalization, is a ValidationError.
PhotonStatistics pmf_from_values(std::span<const double> values, bool renormalize);

}  // namespace photodet
