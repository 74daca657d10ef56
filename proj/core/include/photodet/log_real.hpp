#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace photodet {

/// A real number stored as sign * exp(log_magnitude).
///
/// Zero has sign 0 (log_magnitude is then -inf and otherwise meaningless).
/// Products and quotients are exact in this decomposition up to one rounding
/// of the log; sums go through log-sum-exp and cannot overflow.
struct LogReal {
    int sign = 0;
    double log_magnitude = -std::numeric_limits<double>::infinity();

    static LogReal zero() { return {}; }
    static LogReal one() { return {1, 0.0}; }
    /// Nonnegative magnitude given by its log. -inf maps to zero.
    static LogReal from_log(double log_magnitude, int sign = 1);
    static LogReal from_value(double value);

    bool is_zero() const { return sign == 0; }
    double value() const;

    LogReal operator-() const { return {-sign, log_magnitude}; }
    friend LogReal operator*(LogReal a, LogReal b);
    friend LogReal operator/(LogReal a, LogReal b);
    friend LogReal operator+(LogReal a, LogReal b);
    friend LogReal operator-(LogReal a, LogReal b) { return a + (-b); }
};

/// Accumulates LogReal terms and sums them largest-first with a single
/// rescaling by the dominant magnitude.
class LogSum {
public:
    void add(LogReal term);
    void add_log(double log_magnitude, int sign = 1) { add(LogReal::from_log(log_magnitude, sign)); }
    LogReal result() const;
    std::size_t size() const { return terms_.size(); }

private:
    std::vector<LogReal> terms_;
};

/// Neumaier-compensated running sum in linear space.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace photodet
