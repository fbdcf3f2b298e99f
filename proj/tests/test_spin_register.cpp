#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dresslat/errors.hpp"
#include "dresslat/spin_register.hpp"
#include "dresslat/units.hpp"
#include "gen.hpp"

using namespace dresslat;
using testgen::Gen;

namespace {

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

ZeemanConfig zeeman(double field, int twice_q0 = -1, int twice_q1 = 1)
{
    return {field, strontium87(), half(twice_q0), half(twice_q1)};
}

Rational add(Rational a, Rational b)
{
    std::int64_t num = a.num * b.den + b.num * a.den;
    std::int64_t den = a.den * b.den;
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

}  // namespace

TEST_SUITE("spin_register")
{
    TEST_CASE("neighbouring resonances at 1000 and 5000 gauss")
    {
        const ZeemanConfig z1 = zeeman(1000.0);
        CHECK(resonance_offset(z1, half(3)) - resonance_offset(z1, half(1)) == 109000.0);
        const ZeemanConfig z5 = zeeman(5000.0);
        const double spacing = resonance_offset(z5, half(-7)) - resonance_offset(z5, half(-9));
        CHECK(spacing == 545000.0);
        CHECK(std::abs(spacing - 550e3) / 550e3 < 0.01);
        for (int m = -9; m <= 9; m += 2) CHECK(resonance_offset(zeeman(0.0), half(m)) == 0.0);
    }

    TEST_CASE("resonance offset range checks")
    {
        const ZeemanConfig z = zeeman(1000.0);
        CHECK_THROWS_AS(resonance_offset(z, half(11)), DomainError);
        CHECK_THROWS_AS(resonance_offset(z, half(2)), DomainError);
        CHECK_THROWS_AS(zeeman(-1.0).validate(), DomainError);
        CHECK_THROWS_AS(zeeman(1.0, 1, 1).validate(), DomainError);
        CHECK_THROWS_AS(zeeman(1.0, -11, 1).validate(), DomainError);
    }

    TEST_CASE("resonance offset is linear in field and projection")
    {
        Gen g(21);
        for (int i = 0; i < 500; ++i) {
            const double b1 = g.uniform(0.0, 5000.0);
            const double b2 = g.uniform(0.0, 5000.0);
            const int m = 2 * g.integer(-4, 4) + 1;
            const double sum = resonance_offset(zeeman(b1 + b2), half(m));
            const double parts = resonance_offset(zeeman(b1), half(m)) + resonance_offset(zeeman(b2), half(m));
            REQUIRE(std::abs(sum - parts) <= 1e-12 * std::abs(sum));

            // m1 + m2 stays in range when both are small.
            const int m1 = 2 * g.integer(-2, 1) + 1;
            const int m2 = 2 * g.integer(-2, 2);
            const ZeemanConfig z = zeeman(b1);
            if (std::abs(m1 + m2) > 9) continue;
            const double lhs = resonance_offset(z, half(m1 + m2));
            const double rhs = resonance_offset(z, half(m1)) + m2 * 0.5 * z.species.zeeman_hz_per_gauss * b1;
            REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), 1.0));

            REQUIRE(resonance_offset(z, half(-m)) == -resonance_offset(z, half(m)));
        }
    }

    TEST_CASE("selectivity margin")
    {
        const SelectivityReport near = selectivity_margin(zeeman(1000.0), kTwoPi * 100e3);
        CHECK(near.spacing_hz == doctest::Approx(109e3).epsilon(1e-15));
        CHECK(near.ratio == doctest::Approx(1.09).epsilon(1e-14));
        CHECK_FALSE(near.selective);

        const SelectivityReport stretched = selectivity_margin(zeeman(1000.0, -9, 9), kTwoPi * 100e3);
        CHECK(stretched.spacing_hz == doctest::Approx(9.0 * near.spacing_hz).epsilon(1e-15));
        CHECK(stretched.ratio >= 9.0);

        const SelectivityReport tiny = selectivity_margin(zeeman(1000.0), 1e-6);
        CHECK(tiny.ratio > 1e11);
        CHECK(tiny.selective);

        CHECK(selectivity_margin(zeeman(1000.0), kTwoPi * 100e3, 1.0).selective);
        CHECK_THROWS_AS(selectivity_margin(zeeman(1000.0), 0.0), DomainError);
    }

    TEST_CASE("tensor coefficient values")
    {
        CHECK(tensor_coefficient_exact({half(13), half(1)}) == Rational{-8, 13});
        CHECK(tensor_coefficient_exact({half(13), half(-1)}) == Rational{-8, 13});
        CHECK(tensor_coefficient({half(13), half(1)}) == doctest::Approx(-0.6154).epsilon(1e-4));
        CHECK(tensor_coefficient_exact({half(13), half(13)}) == Rational{1, 1});
        CHECK_THROWS_WITH_AS(tensor_coefficient_exact({half(1), half(1)}), doctest::Contains("undefined"),
                             DomainError);
        CHECK_THROWS_AS(tensor_coefficient_exact({half(3), half(5)}), DomainError);
    }

    TEST_CASE("stretched states and traceless sums are exact")
    {
        for (int f = 2; f <= 13; ++f) {
            CHECK(tensor_coefficient_exact({half(f), half(f)}) == Rational{1, 1});
            CHECK(tensor_coefficient_exact({half(f), half(-f)}) == Rational{1, 1});
            Rational sum{0, 1};
            for (int m = -f; m <= f; m += 2) sum = add(sum, tensor_coefficient_exact({half(f), half(m)}));
            CHECK(sum == Rational{0, 1});
        }
    }

    TEST_CASE("tensor coefficient against the half-integer formula")
    {
        for (int f = 2; f <= 13; ++f) {
            for (int m = -f; m <= f; m += 2) {
                const long double F = f / 2.0L;
                const long double mf = m / 2.0L;
                const long double expected = (3.0L * mf * mf - F * (F + 1.0L)) / (F * (2.0L * F - 1.0L));
                REQUIRE(tensor_coefficient({half(f), half(m)}) ==
                        doctest::Approx(static_cast<double>(expected)).epsilon(1e-15));
            }
        }
    }

    TEST_CASE("polarizability shift")
    {
        const HyperfineState stretched{half(13), half(13)};
        CHECK(polarizability_shift(stretched, {3.0, 1.0, 0.0}).shift_hz == 0.0);
        const PolarizabilityShift cancel = polarizability_shift(stretched, {-2.5, 2.5, 7.0});
        CHECK(cancel.shift_hz == 0.0);
        CHECK_FALSE(cancel.trapped_at_dressed_minima);

        const PolarizabilityShift s = polarizability_shift(stretched, {-1.0, -0.5, 2.0});
        CHECK(s.shift_hz == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(s.trapped_at_dressed_minima);

        // User inputs chosen for a 150 kHz deep potential.
        const PolarizabilityShift deep = polarizability_shift(stretched, {-200e3, 100e3, 3.0});
        CHECK(deep.shift_hz == doctest::Approx(150e3));
        CHECK(depth_comparable(deep.shift_hz, 150e3));
        CHECK_FALSE(depth_comparable(deep.shift_hz, 20e3));
        CHECK_THROWS_AS(polarizability_shift(stretched, {1.0, 1.0, -1.0}), DomainError);
        CHECK_THROWS_AS(polarizability_shift({half(1), half(1)}, {1.0, 1.0, 1.0}), DomainError);
    }

    TEST_CASE("gradient splitting checkpoints")
    {
        const Species sr = strontium87();
        CHECK(energy_gradient_hz_per_cm({1.0, std::nullopt}, sr) == 4.1e6);
        const double split = gradient_site_splitting({100.0, 349e-9}, sr);
        CHECK(split == doctest::Approx(14309.0).epsilon(1e-12));
        CHECK(std::abs(split - 15e3) / 15e3 < 0.10);
        CHECK(gradient_site_splitting({0.0, std::nullopt}, sr) == 0.0);
        CHECK(GradientConfig{1.0, std::nullopt}.spacing(sr) == sr.clock_wavelength_m / 2.0);
        CHECK_THROWS_AS(gradient_site_splitting({1.0, 0.0}, sr), DomainError);
    }

    TEST_CASE("gradient splitting is bilinear")
    {
        Gen g(22);
        const Species sr = strontium87();
        for (int i = 0; i < 300; ++i) {
            const double g1 = g.uniform(-200.0, 200.0);
            const double g2 = g.uniform(-200.0, 200.0);
            const double s1 = g.uniform(100e-9, 1e-6);
            const double s2 = g.uniform(100e-9, 1e-6);
            const double a = g.uniform(0.1, 5.0);
            auto f = [&](double grad, double spacing) { return gradient_site_splitting({grad, spacing}, sr); };
            const double scale = std::abs(f(g1, s1)) + std::abs(f(g2, s1)) + 1.0;
            REQUIRE(std::abs(f(g1 + g2, s1) - f(g1, s1) - f(g2, s1)) <= 1e-12 * scale);
            REQUIRE(std::abs(f(g1, s1 + s2) - f(g1, s1) - f(g1, s2)) <= 1e-12 * (std::abs(f(g1, s1 + s2)) + 1.0));
            REQUIRE(std::abs(f(a * g1, s1) - a * f(g1, s1)) <= 1e-12 * (std::abs(a * f(g1, s1)) + 1.0));
        }
    }

    TEST_CASE("readout addressability verdicts")
    {
        const Species sr = strontium87();
        // Gradient chosen so the neighbouring-site splitting is 15 kHz.
        const double spacing = sr.site_spacing_m();
        const GradientConfig grad{15e3 / (4.1e6 * spacing * 100.0), std::nullopt};
        CHECK(gradient_site_splitting(grad, sr) == doctest::Approx(15e3).epsilon(1e-12));
        const double w = kTwoPi * 15e3;

        const AddressabilityReport ok = readout_addressability(grad, sr, w, kTwoPi * 1e3);
        CHECK(ok.site_resolvable);
        CHECK(ok.band_safe);
        CHECK(ok.addressable);
        CHECK(ok.min_readout_time_s == doctest::Approx(1e-3).epsilon(1e-14));

        const AddressabilityReport wide = readout_addressability(grad, sr, w, kTwoPi * 15e3);
        CHECK_FALSE(wide.site_resolvable);
        CHECK_FALSE(wide.addressable);

        const AddressabilityReport band = readout_addressability(grad, sr, w, w);
        CHECK_FALSE(band.band_safe);
        CHECK_FALSE(band.addressable);

        const nlohmann::json j = to_json(ok);
        CHECK(j.at("addressable").get<bool>());
        CHECK(j.at("site_splitting_hz").get<double>() == doctest::Approx(15e3));
        CHECK(j.contains("min_readout_time_s"));

        CHECK_THROWS_AS(readout_addressability(grad, sr, 0.0, 1.0), DomainError);
        CHECK_THROWS_AS(readout_addressability(grad, sr, 1.0, 0.0), DomainError);
    }
}
