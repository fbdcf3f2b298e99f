#pragma once

#include <cmath>
#include <initializer_list>
#include <numbers>

namespace dresslat {

// Energies are carried as angular frequencies (rad/s) throughout the library.
// hbar only appears when converting to mechanical quantities.
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg

constexpr double hz_to_angular(double hz) { return kTwoPi * hz; }
constexpr double angular_to_hz(double w) { return w / kTwoPi; }

inline bool all_finite(std::initializer_list<double> values)
{
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace dresslat
