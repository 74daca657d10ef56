#pragma once

#include <cstdint>

#include "photodet/model.hpp"
#include "photodet/states.hpp"
#include "photodet/statistics.hpp"

namespace photodet {

/// Recovered photon statistics plus the diagnostics of the inversion.
struct InversionResult {
    PhotonStatistics statistics;
    /// Method-specific conditioning indicator: (1/eta - 1) m_max for the
    /// lossy inverse, e^N max_j N^j/j! for the unit-efficiency inverse,
    /// sigma_max/sigma_min for the general solver.
    double conditioning = 0.0;
    /// Infinity-norm of the applied inverse operator (exact inverses only):
    /// |delta p|_inf <= amplification * |delta P|_inf.
    double amplification = 0.0;
    /// Total magnitude of negative entries clipped to zero.
    double clip_residual = 0.0;
    /// |A p - P|_2 against the forward model (general solver only).
    double residual_norm = 0.0;
};

struct LossyInversionOptions {
    double max_conditioning = 200.0;
    double negativity_tolerance = 1e-6;
};

struct UnitEfficiencyInversionOptions {
    double max_noise = 30.0;
    double negativity_tolerance = 1e-6;
};

struct GeneralInversionOptions {
    bool nonnegative = true;
    double max_condition_number = 1e12;
};

/// Exact inverse of the pure-loss binomial transform.
InversionResult invert_lossy(const CountDistribution& counts, double efficiency,
                             const LossyInversionOptions& options = {});

/// Exact inverse of the shifted-Poisson channel (unit efficiency).
InversionResult invert_unit_efficiency(const CountDistribution& counts, double n_noise,
                                       const UnitEfficiencyInversionOptions& options = {});

/// Truncated least squares against cond_matrix(detector, n_max, counts.m_max()).
/// With options.nonnegative the solution is constrained to p >= 0, sum p <= 1.
InversionResult invert_general(const CountDistribution& counts, const DetectorConfig& detector,
                               std::int64_t n_max, const GeneralInversionOptions& options = {});

}  // namespace photodet
