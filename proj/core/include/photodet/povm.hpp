#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "photodet/model.hpp"

namespace photodet {

/// Coherent amplitudes alpha_k of the signal modes.
class SignalAmplitudes {
public:
    explicit SignalAmplitudes(std::vector<std::complex<double>> amplitudes);

    /// Single mode with real amplitude sqrt(intensity).
    static SignalAmplitudes from_intensity(double intensity);

    const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
    std::size_t mode_count() const { return amplitudes_.size(); }
    /// sum_k |alpha_k|^2
    double total_intensity() const { return total_intensity_; }

private:
    std::vector<std::complex<double>> amplitudes_;
    double total_intensity_ = 0.0;
};

/// Husimi-Kano symbol <alpha|Pi_n|alpha>: probability of n counts for
/// coherent input. Depends on the signal only through sum |alpha_k|^2.
double povm_symbol(std::int64_t n, const SignalAmplitudes& signal, const DetectorConfig& detector);
double povm_symbol(std::int64_t n, double total_intensity, const DetectorConfig& detector);

/// Efficiency below which the Poissonian conditional probability is replaced
/// by its eta -> 0 limit Pois(m; n_noise).
inline constexpr double kZeroEfficiencyCutoff = 1e-12;

/// P(m|n) with Poissonian noise counts.
double cond_prob_poisson(std::int64_t m, std::int64_t n, double efficiency, double n_noise);

/// P(m|n) with noise from `modes` thermal modes, one of them coupled to the
/// signal. Falls back to cond_prob_poisson(m, n, efficiency, 0) at n_noise 0.
double cond_prob_finite(std::int64_t m, std::int64_t n, double efficiency, double n_noise,
                        std::int64_t modes);

/// P(m|n) for the detector's regime.
double cond_prob(std::int64_t m, std::int64_t n, const DetectorConfig& detector);

/// Dense table of P(m|n), m = 0..m_max (rows), n = 0..n_max (columns).
struct ConditionalMatrix {
    DetectorConfig detector;
    std::int64_t m_max = 0;
    std::int64_t n_max = 0;
    std::vector<double> entries;             ///< row-major, (m_max+1) x (n_max+1)
    std::vector<double> column_tail_bounds;  ///< 1 - sum_m P(m|n), clamped at 0

    double operator()(std::int64_t m, std::int64_t n) const {
        return entries[static_cast<std::size_t>(m * (n_max + 1) + n)];
    }
    std::size_t rows() const { return static_cast<std::size_t>(m_max + 1); }
    std::size_t cols() const { return static_cast<std::size_t>(n_max + 1); }
};

ConditionalMatrix cond_matrix(const DetectorConfig& detector, std::int64_t n_max, std::int64_t m_max);

}  // namespace photodet
