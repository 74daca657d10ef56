#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "photodet/model.hpp"
#include "photodet/povm.hpp"
#include "photodet/statistics.hpp"

// Brute-force implementations of the detection model, independent of the
// closed forms in povm.hpp. Used to validate them.
namespace photodet::oracle {

struct SampleHistogram {
    std::map<std::int64_t, std::uint64_t> counts;
    std::uint64_t total_samples = 0;
    std::uint64_t seed = 0;

    /// Relative frequencies for outcomes 0..m_max.
    std::vector<double> frequencies(std::int64_t m_max) const;
    std::int64_t max_outcome() const { return counts.empty() ? 0 : counts.rbegin()->first; }
};

/// Semiclassical Monte Carlo of the beam-splitter model: per sample, draws
/// `modes` circular Gaussian bath amplitudes of mean square N_nc/modes, adds
/// the transmitted signal sqrt(eta sum|alpha|^2) to the first, and draws the
/// count from a Poisson law with the resulting total intensity.
///
/// Each sample's randomness is keyed on (seed, sample index), so the result
/// does not depend on `workers`. Requires a FiniteModes detector.
SampleHistogram mc_sample_counts(const SignalAmplitudes& signal, const DetectorConfig& detector,
                                 std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

/// Binomial loss convolved with Poisson noise, summed directly.
double convolution_oracle_poisson(std::int64_t m, std::int64_t n, double efficiency, double n_noise);

/// <n|Pi_m|n> from the normal-ordered operator form of the finite-mode POVM:
/// the symbol is expanded in powers c_k x^k and each :(a^dag a)^k: is
/// replaced by n!/(n-k)!. Evaluated in 50-digit arithmetic because the
/// expansion alternates. Requires n <= 200.
double normal_ordered_expansion_oracle(std::int64_t m, std::int64_t n, const DetectorConfig& detector);

/// Photon-number distribution of output port c for the real beam splitter
/// a^dag -> t c^dag + r d^dag, b^dag -> -r c^dag + t d^dag with t^2 = transmissivity,
/// given Fock input |n_a, n_b>. Entry j is the probability of j photons in c.
std::vector<double> beam_splitter_output(std::int64_t n_a, std::int64_t n_b, double transmissivity);

/// Exact Fock-space simulation: |n> and a thermal bath mode (mean
/// (N_nc/mu)/(1-eta)) enter a beam splitter of transmissivity eta; the
/// detector arm is convolved with mu-1 uncoupled thermal modes of mean
/// N_nc/mu each. `truncation` is the largest bath photon number kept.
CountDistribution fock_bs_oracle(std::int64_t photon_number, double efficiency, double n_noise,
                                 std::int64_t modes, std::int64_t truncation);

}  // namespace photodet::oracle
