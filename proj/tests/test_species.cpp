#include <doctest.h>

#include <filesystem>

#include "dresslat/errors.hpp"
#include "dresslat/species.hpp"
#include "dresslat/units.hpp"

using namespace dresslat;

#ifndef DRESSLAT_DATA_DIR
#error "DRESSLAT_DATA_DIR must point at the data directory"
#endif

TEST_SUITE("species")
{
    TEST_CASE("built-in strontium constants")
    {
        const Species sr = strontium87();
        CHECK_NOTHROW(sr.validate());
        CHECK(sr.nuclear_spin.twice == 9);
        CHECK(sr.zeeman_hz_per_gauss == 109.0);
        CHECK(sr.site_spacing_m() == doctest::Approx(349.22285e-9).epsilon(1e-7));
        CHECK(sr.clock_wavenumber() == doctest::Approx(kTwoPi / 698.4457e-9).epsilon(1e-15));
    }

    TEST_CASE("preset file matches the built-in values")
    {
        const Species file = load_species_preset(std::filesystem::path(DRESSLAT_DATA_DIR) / "presets" / "sr87.json");
        const Species sr = strontium87();
        CHECK(file.mass_kg == sr.mass_kg);
        CHECK(file.clock_wavelength_m == sr.clock_wavelength_m);
        CHECK(file.zeeman_hz_per_gauss == sr.zeeman_hz_per_gauss);
        CHECK(file.p2_gradient_hz_per_cm_per_gauss_per_cm == sr.p2_gradient_hz_per_cm_per_gauss_per_cm);
        CHECK(file.nuclear_spin == sr.nuclear_spin);
    }

    TEST_CASE("json round trip")
    {
        const Species sr = strontium87();
        const Species back = species_from_json(species_to_json(sr));
        CHECK(back.mass_kg == sr.mass_kg);
        CHECK(back.nuclear_spin == sr.nuclear_spin);
    }

    TEST_CASE("strict preset schema")
    {
        nlohmann::json j = species_to_json(strontium87());
        j["colour"] = "red";
        CHECK_THROWS_AS(species_from_json(j), ConfigError);

        j = species_to_json(strontium87());
        j["nuclear_spin_2I"] = 4.5;
        CHECK_THROWS_AS(species_from_json(j), ConfigError);

        j = species_to_json(strontium87());
        j.erase("mass_kg");
        CHECK_THROWS_AS(species_from_json(j), ConfigError);

        j = species_to_json(strontium87());
        j["mass_kg"] = -1.0;
        CHECK_THROWS_AS(species_from_json(j), ConfigError);

        j = species_to_json(strontium87());
        j["nuclear_spin_2I"] = 0;
        CHECK_THROWS_AS(species_from_json(j), ConfigError);

        CHECK_THROWS_AS(load_species_preset("/nonexistent/preset.json"), ConfigError);
    }

    TEST_CASE("half-integer helpers")
    {
        constexpr HalfInteger h = HalfInteger::from_twice(7);
        CHECK(h.value() == 3.5);
        CHECK_FALSE(h.is_integer());
        CHECK((-h).twice == -7);
        CHECK(HalfInteger::from_twice(4).is_integer());
        CHECK(to_string(h) == "7/2");
        CHECK(to_string(HalfInteger::from_twice(-4)) == "-2");
    }
}
