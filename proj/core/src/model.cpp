#include "photodet/model.hpp"

#include <algorithm>
#include <cmath>

#include "photodet/error.hpp"

namespace photodet {

double mean_noise(const NoiseModel& noise) {
    return std::visit([](const auto& v) { return v.n_noise; }, noise);
}

bool is_finite_modes(const NoiseModel& noise) {
    return std::holds_alternative<FiniteModes>(noise);
}

void validate(const NoiseModel& noise) {
    const double n_noise = mean_noise(noise);
    if (!std::isfinite(n_noise) || n_noise < 0.0) {
        throw ValidationError("noise: n_noise must be finite and >= 0");
    }
    if (const auto* finite = std::get_if<FiniteModes>(&noise); finite && finite->modes < 1) {
        throw ValidationError("noise: modes must be >= 1");
    }
}

void validate(const DetectorConfig& detector) {
    if (!std::isfinite(detector.efficiency) || detector.efficiency < 0.0 || detector.efficiency > 1.0) {
        throw ValidationError("detector: efficiency must lie in [0, 1]");
    }
    validate(detector.noise);
}

std::int64_t estimate_mode_count(const BathSpec& bath) {
    if (!std::isfinite(bath.bandwidth) || !std::isfinite(bath.detection_time)) {
        throw ValidationError("mode count: bandwidth and detection time must be finite");
    }
    if (bath.bandwidth <= 0.0 || bath.detection_time <= 0.0) {
        throw ValidationError("mode count: bandwidth and detection time must be positive");
    }
    const double product = std::round(bath.bandwidth * bath.detection_time);
    // int64 holds it but doubles stop being exact integers past 2^53.
    if (product > 9007199254740992.0) {
        throw ValidationError("mode count: bandwidth * time exceeds 2^53");
    }
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(product));
}

double critical_detection_time(double n_noise, double bandwidth) {
    if (!std::isfinite(n_noise) || n_noise < 0.0) {
        throw ValidationError("critical time: n_noise must be finite and >= 0");
    }
    if (!std::isfinite(bandwidth) || bandwidth <= 0.0) {
        throw ValidationError("critical time: bandwidth must be finite and positive");
    }
    return n_noise / bandwidth;
}

bool poisson_limit_applicable(const NoiseModel& noise, double tolerance) {
    validate(noise);
    if (!(tolerance > 0.0)) {
        throw ValidationError("poisson_limit_applicable: tolerance must be positive");
    }
    if (const auto* finite = std::get_if<FiniteModes>(&noise)) {
        return finite->n_noise / static_cast<double>(finite->modes) < tolerance;
    }
    return true;
}

}  // namespace photodet
