#include "photodet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "photodet/error.hpp"
#include "photodet/log_real.hpp"
#include "photodet/specfun.hpp"

namespace photodet::oracle {
namespace {

using Real50 = boost::multiprecision::cpp_bin_float_50;

constexpr double kThermalTailLimit = 1e-12;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based stream: the state for sample i is a hash of (seed, i).
class SampleEngine {
public:
    using result_type = std::uint64_t;

    SampleEngine(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed;
        state_ = splitmix64(s) ^ index;
        (void)splitmix64(state_);
    }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return splitmix64(state_); }

private:
    std::uint64_t state_;
};

std::int64_t draw_count(std::uint64_t seed, std::uint64_t index, double signal_amplitude, double per_mode,
                        std::int64_t modes) {
    SampleEngine engine(seed, index);
    std::normal_distribution<double> gauss(0.0, std::sqrt(per_mode / 2.0));
    double intensity = 0.0;
    for (std::int64_t l = 0; l < modes; ++l) {
        const double re = gauss(engine) + (l == 0 ? signal_amplitude : 0.0);
        const double im = gauss(engine);
        intensity += re * re + im * im;
    }
    if (intensity <= 0.0) {
        return 0;
    }
    std::poisson_distribution<std::int64_t> counts(intensity);
    return counts(engine);
}

}  // namespace

std::vector<double> SampleHistogram::frequencies(std::int64_t m_max) const {
    std::vector<double> out(static_cast<std::size_t>(m_max + 1), 0.0);
    if (total_samples == 0) return out;
    for (const auto& [m, c] : counts) {
        if (m <= m_max) out[static_cast<std::size_t>(m)] = static_cast<double>(c) / static_cast<double>(total_samples);
    }
    return out;
}

SampleHistogram mc_sample_counts(const SignalAmplitudes& signal, const DetectorConfig& detector,
                                 std::uint64_t samples, std::uint64_t seed, unsigned workers) {
    validate(detector);
    const auto* finite = std::get_if<FiniteModes>(&detector.noise);
    if (!finite) {
        throw ValidationError("mc_sample_counts: requires a finite-mode noise model (use large modes instead)");
    }
    if (samples < 1) {
        throw ValidationError("mc_sample_counts: samples must be >= 1");
    }
    const double amplitude = std::sqrt(detector.efficiency * signal.total_intensity());
    const double per_mode = finite->n_noise / static_cast<double>(finite->modes);
    const std::int64_t modes = finite->modes;

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(samples, 256))));
    std::vector<std::map<std::int64_t, std::uint64_t>> partial(workers);
    auto run_chunk = [&](unsigned w) {
        const std::uint64_t begin = samples * w / workers;
        const std::uint64_t end = samples * (w + 1) / workers;
        std::vector<std::uint64_t> dense;
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto m = static_cast<std::size_t>(draw_count(seed, i, amplitude, per_mode, modes));
            if (m >= dense.size()) dense.resize(m + 1, 0);
            ++dense[m];
        }
        for (std::size_t m = 0; m < dense.size(); ++m)
            if (dense[m] > 0) partial[w][static_cast<std::int64_t>(m)] += dense[m];
    };
    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    }

    SampleHistogram out;
    out.total_samples = samples;
    out.seed = seed;
    for (const auto& part : partial)
        for (const auto& [m, c] : part) out.counts[m] += c;
    return out;
}

double convolution_oracle_poisson(std::int64_t m, std::int64_t n, double efficiency, double n_noise) {
    if (m < 0 || n < 0) {
        throw ValidationError("convolution_oracle_poisson: negative index");
    }
    double total = 0.0;
    for (std::int64_t k = 0; k <= std::min(m, n); ++k) {
        double binom = 1.0;  // C(n, k) by the multiplicative formula
        for (std::int64_t j = 1; j <= k; ++j) binom = binom * static_cast<double>(n - k + j) / static_cast<double>(j);
        double noise = std::exp(-n_noise);
        for (std::int64_t j = 1; j <= m - k; ++j) noise *= n_noise / static_cast<double>(j);
        total += binom * std::pow(efficiency, static_cast<double>(k)) *
                 std::pow(1.0 - efficiency, static_cast<double>(n - k)) * noise;
    }
    return total;
}

double normal_ordered_expansion_oracle(std::int64_t m, std::int64_t n, const DetectorConfig& detector) {
    validate(detector);
    const auto* finite = std::get_if<FiniteModes>(&detector.noise);
    if (!finite) {
        throw ValidationError("normal_ordered_expansion_oracle: requires finite-mode noise");
    }
    if (m < 0 || n < 0 || n > 200) {
        throw ValidationError("normal_ordered_expansion_oracle: requires 0 <= n <= 200 and m >= 0");
    }
    if (finite->n_noise == 0.0) {
        throw ValidationError("normal_ordered_expansion_oracle: requires n_noise > 0");
    }
    const Real50 eta = detector.efficiency;
    const Real50 mu = static_cast<double>(finite->modes);
    const Real50 r = Real50(finite->n_noise) / mu;
    const Real50 one = 1;
    const Real50 prefactor = pow(r, m) / pow(one + r, Real50(m) + mu);
    const Real50 b = eta / (one + r);        // exp(-b x)
    const Real50 c = eta / (r * (one + r));  // L_m^{mu-1}(-c x)

    // Coefficients of x^j in L_m^{mu-1}(-c x): C(m+mu-1, m-j) c^j / j!
    std::vector<Real50> lag(static_cast<std::size_t>(m + 1));
    for (std::int64_t j = 0; j <= m; ++j) {
        Real50 binom = 1;  // C(m-1+mu, m-j) = prod_{i=1}^{m-j} (mu + j - 1 + i)/i
        for (std::int64_t i = 1; i <= m - j; ++i) binom *= (mu + Real50(j - 1 + i)) / Real50(i);
        Real50 cj = 1;
        for (std::int64_t i = 1; i <= j; ++i) cj *= c / Real50(i);
        lag[static_cast<std::size_t>(j)] = binom * cj;
    }
    Real50 total = 0;
    Real50 falling = 1;  // n!/(n-k)!
    for (std::int64_t k = 0; k <= n; ++k) {
        if (k > 0) falling *= Real50(n - k + 1);
        Real50 coeff = 0;  // c_k = sum_j lag_j (-b)^(k-j)/(k-j)!
        for (std::int64_t j = 0; j <= std::min(k, m); ++j) {
            Real50 e = 1;
            for (std::int64_t i = 1; i <= k - j; ++i) e *= -b / Real50(i);
            coeff += lag[static_cast<std::size_t>(j)] * e;
        }
        total += coeff * falling;
    }
    return static_cast<double>(prefactor * total);
}

std::vector<double> beam_splitter_output(std::int64_t n_a, std::int64_t n_b, double transmissivity) {
    if (n_a < 0 || n_b < 0) {
        throw ValidationError("beam_splitter_output: negative photon number");
    }
    if (!(transmissivity >= 0.0) || transmissivity > 1.0) {
        throw ValidationError("beam_splitter_output: transmissivity must lie in [0, 1]");
    }
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    const double log_t2 = transmissivity > 0.0 ? std::log(transmissivity) : -INFINITY;
    const double log_r2 = transmissivity < 1.0 ? std::log1p(-transmissivity) : -INFINITY;
    // b^dag^n_b |0>/sqrt(n_b!) maps to sum_j (-r)^j t^(n_b-j) sqrt(C(n_b, j)) |j, n_b-j>.
    std::vector<double> psi(static_cast<std::size_t>(n_a + n_b + 1), 0.0);
    for (std::int64_t j = 0; j <= n_b; ++j) {
        const double log_mag = 0.5 * (specfun::log_binomial(n_b, j).log_magnitude +
                                      (j > 0 ? static_cast<double>(j) * log_r2 : 0.0) +
                                      (j < n_b ? static_cast<double>(n_b - j) * log_t2 : 0.0));
        psi[static_cast<std::size_t>(j)] = (j % 2 == 0 ? 1.0 : -1.0) * std::exp(log_mag);
    }
    // Then apply (t c^dag + r d^dag)/sqrt(k+1) n_a times; each step preserves the norm, so
    // there is no cancellation between large terms as in the explicit double sum.
    std::vector<double> next(psi.size(), 0.0);
    for (std::int64_t k = 0; k < n_a; ++k) {
        const std::int64_t n = n_b + k;  // photons before this step
        const double scale = 1.0 / std::sqrt(static_cast<double>(k + 1));
        for (std::int64_t j = 0; j <= n + 1; ++j) {
            double v = 0.0;
            if (j > 0) v += t * std::sqrt(static_cast<double>(j)) * psi[static_cast<std::size_t>(j - 1)];
            if (j <= n) v += r * std::sqrt(static_cast<double>(n + 1 - j)) * psi[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(j)] = v * scale;
        }
        std::swap(psi, next);
    }
    for (double& a : psi) a *= a;
    return psi;
}

CountDistribution fock_bs_oracle(std::int64_t photon_number, double efficiency, double n_noise,
                                 std::int64_t modes, std::int64_t truncation) {
    if (photon_number < 0 || truncation < 0) {
        throw ValidationError("fock_bs_oracle: negative photon number or truncation");
    }
    if (!(efficiency >= 0.0) || !(efficiency < 1.0)) {
        throw ValidationError("fock_bs_oracle: requires 0 <= eta < 1 (the bath needs a reflective port)");
    }
    if (!(n_noise > 0.0) || !std::isfinite(n_noise)) {
        throw ValidationError("fock_bs_oracle: requires n_noise > 0");
    }
    if (modes < 1) {
        throw ValidationError("fock_bs_oracle: modes must be >= 1");
    }
    const double per_mode = n_noise / static_cast<double>(modes);
    const double bath_mean = per_mode / (1.0 - efficiency);
    const double log_ratio = std::log(bath_mean) - std::log1p(bath_mean);
    const double bath_tail = std::exp(static_cast<double>(truncation + 1) * log_ratio);
    if (bath_tail > kThermalTailLimit) {
        throw RefusalError(RefusalReason::TruncationInsufficient,
                           "fock_bs_oracle: thermal input tail " + std::to_string(bath_tail) + " at truncation " +
                               std::to_string(truncation) + " exceeds 1e-12");
    }

    const std::int64_t extent = photon_number + truncation;
    std::vector<double> arm(static_cast<std::size_t>(extent + 1), 0.0);
    for (std::int64_t k = 0; k <= truncation; ++k) {
        const double weight = std::exp(-std::log1p(bath_mean) + static_cast<double>(k) * log_ratio);
        const std::vector<double> out = beam_splitter_output(photon_number, k, efficiency);
        for (std::size_t j = 0; j < out.size(); ++j) arm[j] += weight * out[j];
    }

    // mu - 1 uncoupled modes: negative binomial with mean per_mode each.
    std::vector<double> uncoupled(static_cast<std::size_t>(extent + 1), 0.0);
    if (modes == 1) {
        uncoupled[0] = 1.0;
    } else {
        const double shape = static_cast<double>(modes - 1);
        const double log_q = std::log(per_mode) - std::log1p(per_mode);
        for (std::int64_t m = 0; m <= extent; ++m) {
            uncoupled[static_cast<std::size_t>(m)] =
                std::exp(specfun::log_binomial_shifted(m, shape - 1.0) + static_cast<double>(m) * log_q -
                         shape * std::log1p(per_mode));
        }
    }

    CountDistribution result;
    result.provenance = Provenance::OracleFock;
    result.pmf.assign(static_cast<std::size_t>(extent + 1), 0.0);
    for (std::int64_t m = 0; m <= extent; ++m) {
        CompensatedSum acc;
        for (std::int64_t j = 0; j <= m; ++j) {
            acc.add(arm[static_cast<std::size_t>(j)] * uncoupled[static_cast<std::size_t>(m - j)]);
        }
        result.pmf[static_cast<std::size_t>(m)] = acc.value();
    }
    CompensatedSum mass;
    for (double p : result.pmf) mass.add(p);
    result.tail_bound = std::max(0.0, 1.0 - mass.value());
    return result;
}

}  // namespace photodet::oracle
