#include "photodet/log_real.hpp"

#include <algorithm>

#include "photodet/error.hpp"

namespace photodet {

const char* to_string(RefusalReason reason) {
    switch (reason) {
        case RefusalReason::IllConditioned: return "ill-conditioned";
        case RefusalReason::Negativity: return "negativity";
        case RefusalReason::RankDeficient: return "rank-deficient";
        case RefusalReason::TruncationInsufficient: return "truncation-insufficient";
    }
    return "refused";
}

LogReal LogReal::from_log(double log_magnitude, int sign) {
    if (sign == 0 || log_magnitude == -std::numeric_limits<double>::infinity()) {
        return zero();
    }
    return {sign > 0 ? 1 : -1, log_magnitude};
}

LogReal LogReal::from_value(double value) {
    if (value == 0.0) {
        return zero();
    }
    return {value > 0 ? 1 : -1, std::log(std::abs(value))};
}

double LogReal::value() const {
    if (sign == 0) {
        return 0.0;
    }
    return sign * std::exp(log_magnitude);
}

LogReal operator*(LogReal a, LogReal b) {
    if (a.is_zero() || b.is_zero()) {
        return LogReal::zero();
    }
    return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

LogReal operator/(LogReal a, LogReal b) {
    if (b.is_zero()) {
        return {a.sign == 0 ? 1 : a.sign, std::numeric_limits<double>::infinity()};
    }
    if (a.is_zero()) {
        return LogReal::zero();
    }
    return {a.sign * b.sign, a.log_magnitude - b.log_magnitude};
}

LogReal operator+(LogReal a, LogReal b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.log_magnitude < b.log_magnitude) std::swap(a, b);
    const double ratio = std::exp(b.log_magnitude - a.log_magnitude);
    if (a.sign == b.sign) {
        return {a.sign, a.log_magnitude + std::log1p(ratio)};
    }
    if (ratio == 1.0) {
        return LogReal::zero();
    }
    return {a.sign, a.log_magnitude + std::log1p(-ratio)};
}

void LogSum::add(LogReal term) {
    if (!term.is_zero()) {
        terms_.push_back(term);
    }
}

LogReal LogSum::result() const {
    if (terms_.empty()) {
        return LogReal::zero();
    }
    std::vector<LogReal> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(),
              [](const LogReal& x, const LogReal& y) { return x.log_magnitude > y.log_magnitude; });
    const double top = sorted.front().log_magnitude;
    if (!std::isfinite(top)) {
        return {sorted.front().sign, top};
    }
    CompensatedSum acc;
    for (const LogReal& t : sorted) {
        acc.add(t.sign * std::exp(t.log_magnitude - top));
    }
    const double scaled = acc.value();
    if (scaled == 0.0) {
        return LogReal::zero();
    }
    return {scaled > 0 ? 1 : -1, top + std::log(std::abs(scaled))};
}

}  // namespace photodet
