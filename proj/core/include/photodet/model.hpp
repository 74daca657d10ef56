#pragma once

#include <cstdint>
#include <variant>

namespace photodet {

/// Noise counts with Poissonian statistics (infinitely many bath modes).
struct PoissonianLimit {
    double n_noise = 0.0;  ///< mean number of noise counts
};

/// Noise counts from `modes` equally occupied thermal bath modes.
struct FiniteModes {
    double n_noise = 0.0;
    std::int64_t modes = 1;
};

using NoiseModel = std::variant<PoissonianLimit, FiniteModes>;

double mean_noise(const NoiseModel& noise);
bool is_finite_modes(const NoiseModel& noise);

/// Detector efficiency plus noise model: the full measurement channel.
struct DetectorConfig {
    double efficiency = 1.0;
    NoiseModel noise = PoissonianLimit{};
};

/// Throws ValidationError if efficiency is outside [0, 1], n_noise < 0,
/// modes < 1 or any value is non-finite.
void validate(const NoiseModel& noise);
void validate(const DetectorConfig& detector);

/// Thermal bath bandwidth (rad/s) and detection time (s).
struct BathSpec {
    double bandwidth = 1.0;
    double detection_time = 1.0;
};

/// Number of thermal modes, round(bandwidth * time), at least 1.
std::int64_t estimate_mode_count(const BathSpec& bath);

/// Detection time n_noise / bandwidth below which noise counts are no
/// longer Poissonian.
double critical_detection_time(double n_noise, double bandwidth);

inline constexpr double kDefaultPoissonTolerance = 1e-3;

/// True when the mean noise occupation per mode is below `tolerance`, i.e.
/// the noise modes decouple from the signal. Always true for PoissonianLimit.
bool poisson_limit_applicable(const NoiseModel& noise, double tolerance = kDefaultPoissonTolerance);

}  // namespace photodet
