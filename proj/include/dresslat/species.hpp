#pragma once

#include <compare>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace dresslat {

/// Half-integer quantum number stored as twice its value, so 13/2 is {13}.
struct HalfInteger {
    int twice = 0;

    static constexpr HalfInteger from_twice(int t) { return HalfInteger{t}; }
    constexpr double value() const { return 0.5 * twice; }
    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr HalfInteger operator-() const { return HalfInteger{-twice}; }

    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
};

std::string to_string(HalfInteger h);

/// Atomic species constants. Frequencies here are ordinary (Hz), as quoted
/// in the literature; conversion to angular units happens at use sites.
struct Species {
    std::string name;
    double mass_kg = 0.0;
    double clock_wavelength_m = 0.0;
    double zeeman_hz_per_gauss = 0.0;                   // per unit m_I
    double p2_gradient_hz_per_cm_per_gauss_per_cm = 0.0;
    HalfInteger nuclear_spin;

    /// Throws DomainError if any invariant is violated.
    void validate() const;

    /// Standing-wave wavenumber of light at the clock wavelength.
    double clock_wavenumber() const;

    /// Lattice constant (lambda/2) of a standing wave at the clock wavelength.
    double site_spacing_m() const;
};

/// Built-in 87Sr constants (mass from the atomic-mass table, 698.4 nm clock line).
Species strontium87();

/// Parse a species preset. Unknown keys are rejected.
Species species_from_json(const nlohmann::json& j);
nlohmann::json species_to_json(const Species& s);

/// Load a preset file; throws ConfigError on I/O or schema problems.
Species load_species_preset(const std::filesystem::path& path);

}  // namespace dresslat
