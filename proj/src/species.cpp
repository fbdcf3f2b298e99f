#include "dresslat/species.hpp"

#include <cmath>
#include <fstream>

#include "dresslat/errors.hpp"
#include "dresslat/units.hpp"

namespace dresslat {

std::string to_string(HalfInteger h)
{
    if (h.is_integer()) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

void Species::validate() const
{
    if (!all_finite({mass_kg, clock_wavelength_m, zeeman_hz_per_gauss,
                     p2_gradient_hz_per_cm_per_gauss_per_cm})) {
        throw DomainError("species constants must be finite");
    }
    if (mass_kg <= 0.0) throw DomainError("species mass must be positive");
    if (clock_wavelength_m <= 0.0) throw DomainError("clock wavelength must be positive");
    if (nuclear_spin.twice < 1 || nuclear_spin.is_integer()) {
        throw DomainError("nuclear spin must be a half-integer >= 1/2");
    }
}

double Species::clock_wavenumber() const { return kTwoPi / clock_wavelength_m; }

double Species::site_spacing_m() const { return 0.5 * clock_wavelength_m; }

Species strontium87()
{
    Species s;
    s.name = "87Sr";
    s.mass_kg = 86.9088775 * kAtomicMassUnit;
    s.clock_wavelength_m = 698.4457e-9;
    s.zeeman_hz_per_gauss = 109.0;
    s.p2_gradient_hz_per_cm_per_gauss_per_cm = 4.1e6;
    s.nuclear_spin = HalfInteger::from_twice(9);
    return s;
}

namespace {

const char* const kSpeciesKeys[] = {
    "name",
    "mass_kg",
    "clock_wavelength_m",
    "zeeman_hz_per_gauss",
    "p2_gradient_hz_per_cm_per_gauss_per_cm",
    "nuclear_spin_2I",
};

double require_number(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key)) throw ConfigError(std::string("preset: missing key '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("preset: '") + key + "' must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(std::string("preset: '") + key + "' must be finite");
    return d;
}

}  // namespace

Species species_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw ConfigError("preset: expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* k : kSpeciesKeys) known = known || key == k;
        if (!known) throw ConfigError("preset: unknown key '" + key + "'");
    }

    Species s;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ConfigError("preset: 'name' must be a string");
        s.name = j.at("name").get<std::string>();
    }
    s.mass_kg = require_number(j, "mass_kg");
    s.clock_wavelength_m = require_number(j, "clock_wavelength_m");
    s.zeeman_hz_per_gauss = require_number(j, "zeeman_hz_per_gauss");
    s.p2_gradient_hz_per_cm_per_gauss_per_cm =
        require_number(j, "p2_gradient_hz_per_cm_per_gauss_per_cm");
    if (!j.contains("nuclear_spin_2I") || !j.at("nuclear_spin_2I").is_number_integer()) {
        throw ConfigError("preset: 'nuclear_spin_2I' must be an integer");
    }
    s.nuclear_spin = HalfInteger::from_twice(j.at("nuclear_spin_2I").get<int>());

    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("preset: ") + e.what());
    }
    return s;
}

nlohmann::json species_to_json(const Species& s)
{
    return {
        {"name", s.name},
        {"mass_kg", s.mass_kg},
        {"clock_wavelength_m", s.clock_wavelength_m},
        {"zeeman_hz_per_gauss", s.zeeman_hz_per_gauss},
        {"p2_gradient_hz_per_cm_per_gauss_per_cm", s.p2_gradient_hz_per_cm_per_gauss_per_cm},
        {"nuclear_spin_2I", s.nuclear_spin.twice},
    };
}

Species load_species_preset(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open preset file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("preset " + path.string() + ": " + e.what());
    }
    return species_from_json(j);
}

}  // namespace dresslat
