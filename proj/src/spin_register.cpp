#include "dresslat/spin_register.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "dresslat/errors.hpp"
#include "dresslat/units.hpp"

namespace dresslat {

namespace {

bool valid_projection(HalfInteger m, HalfInteger j)
{
    return std::abs(m.twice) <= j.twice && (m.twice - j.twice) % 2 == 0;
}

}  // namespace

void ZeemanConfig::validate() const
{
    species.validate();
    if (!std::isfinite(field_gauss) || field_gauss < 0.0) {
        throw DomainError("magnetic field must be finite and >= 0");
    }
    if (!valid_projection(qubit_0, species.nuclear_spin) ||
        !valid_projection(qubit_1, species.nuclear_spin)) {
        throw DomainError("qubit m_I values must lie in [-I, I]");
    }
    if (qubit_0 == qubit_1) throw DomainError("qubit m_I values must be distinct");
}

double resonance_offset(const ZeemanConfig& config, HalfInteger m_I)
{
    if (!valid_projection(m_I, config.species.nuclear_spin)) {
        throw DomainError("m_I = " + to_string(m_I) + " outside [-I, I]");
    }
    return m_I.value() * config.species.zeeman_hz_per_gauss * config.field_gauss;
}

SelectivityReport selectivity_margin(const ZeemanConfig& config, double rabi, double threshold)
{
    config.validate();
    if (!(rabi > 0.0)) throw DomainError("Rabi frequency must be positive");
    SelectivityReport r;
    r.spacing_hz = std::abs(resonance_offset(config, config.qubit_1) -
                            resonance_offset(config, config.qubit_0));
    r.ratio = hz_to_angular(r.spacing_hz) / rabi;
    r.threshold = threshold;
    r.selective = r.ratio >= threshold;
    return r;
}

void HyperfineState::validate() const
{
    if (F.twice < 1) throw DomainError("F must be >= 1/2");
    if (!valid_projection(m_F, F)) throw DomainError("|m_F| must not exceed F");
}

Rational tensor_coefficient_exact(const HyperfineState& state)
{
    state.validate();
    // With f = 2F and m = 2 m_F the coefficient is (3 m^2 - f(f+2)) / (2 f (f-1)).
    const std::int64_t f = state.F.twice;
    const std::int64_t m = state.m_F.twice;
    const std::int64_t den = 2 * f * (f - 1);
    if (den == 0) throw DomainError("tensor coefficient undefined for F < 1");
    std::int64_t num = 3 * m * m - f * (f + 2);
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

double tensor_coefficient(const HyperfineState& state) { return tensor_coefficient_exact(state).value(); }

PolarizabilityShift polarizability_shift(const HyperfineState& state, const PolarizabilityInput& input)
{
    if (!all_finite({input.alpha_scalar, input.alpha_tensor, input.field_sq})) {
        throw DomainError("polarizability inputs must be finite");
    }
    if (input.field_sq < 0.0) throw DomainError("field_sq must be >= 0");
    PolarizabilityShift out;
    out.total_polarizability = input.alpha_scalar + input.alpha_tensor * tensor_coefficient(state);
    out.shift_hz = -0.5 * out.total_polarizability * input.field_sq;
    out.trapped_at_dressed_minima = out.total_polarizability < 0.0;
    return out;
}

bool depth_comparable(double depth_a_hz, double depth_b_hz, double factor)
{
    const double a = std::abs(depth_a_hz);
    const double b = std::abs(depth_b_hz);
    if (a == 0.0 || b == 0.0) return a == b;
    return a <= factor * b && b <= factor * a;
}

double GradientConfig::spacing(const Species& species) const
{
    const double s = site_spacing_m.value_or(species.site_spacing_m());
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("site spacing must be positive");
    return s;
}

double energy_gradient_hz_per_cm(const GradientConfig& grad, const Species& species)
{
    if (!std::isfinite(grad.gradient_gauss_per_cm)) throw DomainError("field gradient must be finite");
    return species.p2_gradient_hz_per_cm_per_gauss_per_cm * grad.gradient_gauss_per_cm;
}

double gradient_site_splitting(const GradientConfig& grad, const Species& species)
{
    constexpr double kCmPerM = 100.0;
    return energy_gradient_hz_per_cm(grad, species) * grad.spacing(species) * kCmPerM;
}

AddressabilityReport readout_addressability(const GradientConfig& grad, const Species& species,
                                            double trap_omega, double raman_rabi, double band_factor)
{
    if (!(trap_omega > 0.0)) throw DomainError("trap frequency must be positive");
    if (!(raman_rabi > 0.0)) throw DomainError("Raman Rabi frequency must be positive");
    if (!(band_factor > 0.0)) throw DomainError("band factor must be positive");

    AddressabilityReport r;
    r.gradient_gauss_per_cm = grad.gradient_gauss_per_cm;
    r.site_spacing_m = grad.spacing(species);
    r.energy_gradient_hz_per_cm = energy_gradient_hz_per_cm(grad, species);
    r.site_splitting_hz = gradient_site_splitting(grad, species);
    r.trap_omega = trap_omega;
    r.raman_rabi = raman_rabi;
    r.band_factor = band_factor;
    r.min_readout_time_s = kTwoPi / raman_rabi;
    r.site_resolvable = raman_rabi < hz_to_angular(std::abs(r.site_splitting_hz));
    r.band_safe = raman_rabi < trap_omega / band_factor;
    r.addressable = r.site_resolvable && r.band_safe;
    return r;
}

nlohmann::json to_json(const AddressabilityReport& r)
{
    return {
        {"gradient_gauss_per_cm", r.gradient_gauss_per_cm},
        {"site_spacing_m", r.site_spacing_m},
        {"energy_gradient_hz_per_cm", r.energy_gradient_hz_per_cm},
        {"site_splitting_hz", r.site_splitting_hz},
        {"trap_frequency_hz", angular_to_hz(r.trap_omega)},
        {"raman_rabi_hz", angular_to_hz(r.raman_rabi)},
        {"band_factor", r.band_factor},
        {"min_readout_time_s", r.min_readout_time_s},
        {"site_resolvable", r.site_resolvable},
        {"band_safe", r.band_safe},
        {"addressable", r.addressable},
    };
}

}  // namespace dresslat
