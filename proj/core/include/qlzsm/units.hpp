#pragma once

#include <numbers>

// Internal unit convention: time in microseconds, every frequency-like
// quantity as an angular frequency in rad/us. Plain decay rates are 1/us
// (no 2pi), temperatures in kelvin. Configuration files carry MHz/GHz/ns/mK
// and are converted on load.

namespace qlzsm::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// hbar / k_B in kelvin * microseconds (CODATA hbar, exact SI k_B).
inline constexpr double kHbarOverKb = 7.638232893e-6;

constexpr double mhz_to_angular(double f_mhz) { return kTwoPi * f_mhz; }
constexpr double ghz_to_angular(double f_ghz) { return kTwoPi * 1.0e3 * f_ghz; }
constexpr double khz_to_angular(double f_khz) { return kTwoPi * 1.0e-3 * f_khz; }
constexpr double angular_to_mhz(double w) { return w / kTwoPi; }

constexpr double ns_to_us(double t_ns) { return 1.0e-3 * t_ns; }
constexpr double mk_to_kelvin(double t_mk) { return 1.0e-3 * t_mk; }

// Rates are plain inverse times: 33 kHz -> 0.033 / us.
constexpr double khz_to_rate(double f_khz) { return 1.0e-3 * f_khz; }

}  // namespace qlzsm::units
