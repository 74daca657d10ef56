#include "photodet/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "photodet/error.hpp"
#include "photodet/log_real.hpp"
#include "photodet/povm.hpp"
#include "photodet/specfun.hpp"

namespace photodet {
namespace {

constexpr double kNormalizationSlack = 1e-9;

void check_normalized(const CountDistribution& counts) {
    if (counts.pmf.empty()) {
        throw ValidationError("inversion: empty count distribution");
    }
    CompensatedSum mass;
    for (double p : counts.pmf) {
        if (!std::isfinite(p)) throw ValidationError("inversion: non-finite count probability");
        mass.add(p);
    }
    mass.add(counts.tail_bound);
    if (std::abs(mass.value() - 1.0) > kNormalizationSlack) {
        throw ValidationError("inversion: counts are not normalized (sum + tail = " +
                              std::to_string(mass.value()) + ")");
    }
}

// Applies the clipping policy in place and returns the clipped mass.
double clip_negatives(std::vector<double>& p, double tolerance) {
    double residual = 0.0;
    for (double& v : p) {
        if (v < -tolerance) {
            throw RefusalError(RefusalReason::Negativity,
                               "inversion: recovered probability " + std::to_string(v) +
                                   " is below -" + std::to_string(tolerance));
        }
        if (v < 0.0) {
            residual += -v;
            v = 0.0;
        }
    }
    if (residual > tolerance) {
        throw RefusalError(RefusalReason::Negativity,
                           "inversion: clipped negative mass " + std::to_string(residual) + " exceeds tolerance");
    }
    return residual;
}

PhotonStatistics as_statistics(std::vector<double> p) {
    PhotonStatistics out;
    out.pmf = std::move(p);
    out.tail_bound = std::max(0.0, 1.0 - out.mass());
    return out;
}

// Lawson-Hanson active-set NNLS: min |A x - b|_2 subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    const Eigen::Index n = a.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() * a.cwiseAbs().colwise().sum().maxCoeff() *
                       static_cast<double>(std::max(a.rows(), n));
    const int max_outer = static_cast<int>(3 * n + 10);

    auto solve_passive = [&](Eigen::VectorXd& z) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
        z.setZero(n);
        if (idx.empty()) return;
        Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
        const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
        for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zs(static_cast<Eigen::Index>(c));
    };

    for (int outer = 0; outer < max_outer; ++outer) {
        const Eigen::VectorXd w = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
                best_w = w(j);
                best = j;
            }
        }
        if (best < 0) break;
        passive[static_cast<std::size_t>(best)] = true;

        Eigen::VectorXd z;
        for (int inner = 0; inner < 3 * n + 10; ++inner) {
            solve_passive(z);
            bool feasible = true;
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) feasible = false;
            if (feasible) break;
            double alpha = 1.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    alpha = std::min(alpha, x(j) / (x(j) - z(j)));
                }
            }
            x += alpha * (z - x);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
            }
        }
        x = z;
    }
    return x.cwiseMax(0.0);
}

}  // namespace

InversionResult invert_lossy(const CountDistribution& counts, double efficiency,
                             const LossyInversionOptions& options) {
    if (!(efficiency > 0.0) || efficiency > 1.0) {
        throw ValidationError("invert_lossy: efficiency must lie in (0, 1]");
    }
    check_normalized(counts);
    const std::int64_t m_max = counts.m_max();
    InversionResult out;
    out.conditioning = (1.0 / efficiency - 1.0) * static_cast<double>(m_max);
    if (out.conditioning > options.max_conditioning) {
        throw RefusalError(RefusalReason::IllConditioned,
                           "invert_lossy: conditioning indicator " + std::to_string(out.conditioning) +
                               " exceeds bound " + std::to_string(options.max_conditioning));
    }

    // p_n = sum_{m>=n} C(m, n) eta^-n (1 - 1/eta)^(m-n) P_m
    const double log_inv_eta = -std::log(efficiency);
    const double log_growth = std::log((1.0 - efficiency) / efficiency);  // -inf at eta = 1
    std::vector<double> p(static_cast<std::size_t>(m_max + 1), 0.0);
    for (std::int64_t n = 0; n <= m_max; ++n) {
        CompensatedSum acc;
        CompensatedSum row_norm;
        for (std::int64_t m = n; m <= m_max; ++m) {
            const auto k = static_cast<double>(m - n);
            const double log_c = specfun::log_binomial(m, n).log_magnitude + static_cast<double>(n) * log_inv_eta +
                                 (k == 0.0 ? 0.0 : k * log_growth);
            const double magnitude = std::exp(log_c);
            const double coeff = ((m - n) % 2 == 0) ? magnitude : -magnitude;
            acc.add(coeff * counts.pmf[static_cast<std::size_t>(m)]);
            row_norm.add(magnitude);
        }
        p[static_cast<std::size_t>(n)] = acc.value();
        out.amplification = std::max(out.amplification, row_norm.value());
    }
    out.clip_residual = clip_negatives(p, options.negativity_tolerance);
    out.statistics = as_statistics(std::move(p));
    return out;
}

InversionResult invert_unit_efficiency(const CountDistribution& counts, double n_noise,
                                       const UnitEfficiencyInversionOptions& options) {
    if (!std::isfinite(n_noise) || n_noise < 0.0) {
        throw ValidationError("invert_unit_efficiency: n_noise must be finite and >= 0");
    }
    check_normalized(counts);
    if (n_noise > options.max_noise) {
        throw RefusalError(RefusalReason::IllConditioned,
                           "invert_unit_efficiency: n_noise " + std::to_string(n_noise) + " exceeds bound " +
                               std::to_string(options.max_noise));
    }
    const std::int64_t m_max = counts.m_max();
    InversionResult out;

    // p_n = e^N sum_{m<=n} (-N)^(n-m)/(n-m)! P_m
    std::vector<double> weights(static_cast<std::size_t>(m_max + 1));
    double max_weight = 0.0;
    CompensatedSum weight_sum;
    for (std::int64_t j = 0; j <= m_max; ++j) {
        const double w = std::exp(n_noise + specfun::log_pow(n_noise, static_cast<double>(j)) -
                                  specfun::log_factorial(j));
        weights[static_cast<std::size_t>(j)] = w;
        max_weight = std::max(max_weight, w);
        weight_sum.add(w);
    }
    out.conditioning = max_weight;
    out.amplification = weight_sum.value();

    std::vector<double> p(static_cast<std::size_t>(m_max + 1), 0.0);
    for (std::int64_t n = 0; n <= m_max; ++n) {
        CompensatedSum acc;
        for (std::int64_t m = 0; m <= n; ++m) {
            const std::int64_t j = n - m;
            const double w = weights[static_cast<std::size_t>(j)];
            acc.add((j % 2 == 0 ? w : -w) * counts.pmf[static_cast<std::size_t>(m)]);
        }
        p[static_cast<std::size_t>(n)] = acc.value();
    }
    out.clip_residual = clip_negatives(p, options.negativity_tolerance);
    out.statistics = as_statistics(std::move(p));
    return out;
}

InversionResult invert_general(const CountDistribution& counts, const DetectorConfig& detector,
                               std::int64_t n_max, const GeneralInversionOptions& options) {
    validate(detector);
    if (n_max < 0) {
        throw ValidationError("invert_general: n_max must be >= 0");
    }
    if (counts.pmf.empty()) {
        throw ValidationError("invert_general: empty count distribution");
    }
    const ConditionalMatrix table = cond_matrix(detector, n_max, counts.m_max());
    const auto rows = static_cast<Eigen::Index>(table.rows());
    const auto cols = static_cast<Eigen::Index>(table.cols());
    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index m = 0; m < rows; ++m)
        for (Eigen::Index n = 0; n < cols; ++n) a(m, n) = table(m, n);
    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(counts.pmf.data(), rows);

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double sigma_min = sigma.size() > 0 ? sigma(sigma.size() - 1) : 0.0;
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    InversionResult out;
    out.conditioning = sigma_min > 0.0 ? sigma_max / sigma_min : std::numeric_limits<double>::infinity();
    if (rows < cols || out.conditioning > options.max_condition_number) {
        throw RefusalError(RefusalReason::RankDeficient,
                           "invert_general: condition number " + std::to_string(out.conditioning) +
                               " exceeds bound " + std::to_string(options.max_condition_number) +
                               " (" + std::to_string(rows) + "x" + std::to_string(cols) + " system)");
    }

    Eigen::VectorXd x;
    if (!options.nonnegative) {
        x = svd.solve(b);
    } else {
        // A nonnegative least-squares solution is already the constrained optimum.
        x = svd.solve(b);
        if (x.minCoeff() < 0.0) x = nnls(a, b);
        const double slack = 1e-12 * static_cast<double>(cols);
        if (x.sum() > 1.0 && x.sum() <= 1.0 + slack) {
            x /= x.sum();
        } else if (x.sum() > 1.0) {
            // Enforce sum p = 1 with a heavily weighted extra row.
            const double weight = 1e6 * std::max(1.0, sigma_max);
            Eigen::MatrixXd aug(rows + 1, cols);
            aug.topRows(rows) = a;
            aug.row(rows).setConstant(weight);
            Eigen::VectorXd baug(rows + 1);
            baug.head(rows) = b;
            baug(rows) = weight;
            x = nnls(aug, baug);
            if (x.sum() > 1.0) x /= x.sum();
        }
    }
    out.residual_norm = (a * x - b).norm();
    out.statistics = as_statistics(std::vector<double>(x.data(), x.data() + x.size()));
    return out;
}

}  // namespace photodet
