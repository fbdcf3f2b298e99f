#pragma once

#include <cstdint>
#include <optional>

#include <nlohmann/json.hpp>

#include "dresslat/species.hpp"

namespace dresslat {

struct ZeemanConfig {
    double field_gauss = 0.0;
    Species species;
    HalfInteger qubit_0;  // m_I of the |0> qubit
    HalfInteger qubit_1;  // m_I of the |1> qubit

    void validate() const;
};

/// Offset (Hz) of the |g,m_I> -> |e,m_I> resonance from the zero-field clock
/// frequency, linear Zeeman model m_I * zeta * B.
double resonance_offset(const ZeemanConfig& config, HalfInteger m_I);

struct SelectivityReport {
    double spacing_hz = 0.0;  // separation of the two qubit resonances
    double ratio = 0.0;       // 2*pi*spacing / Omega
    double threshold = 0.0;
    bool selective = false;
};

SelectivityReport selectivity_margin(const ZeemanConfig& config, double rabi, double threshold = 10.0);

struct HyperfineState {
    HalfInteger F;
    HalfInteger m_F;

    void validate() const;
};

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// (3 m_F^2 - F(F+1)) / (F(2F-1)) in lowest terms.
Rational tensor_coefficient_exact(const HyperfineState& state);
double tensor_coefficient(const HyperfineState& state);

/// Polarisabilities are expressed so that alpha * field_sq / 2 is a frequency
/// in Hz (i.e. already divided by Planck's constant).
struct PolarizabilityInput {
    double alpha_scalar = 0.0;
    double alpha_tensor = 0.0;
    double field_sq = 0.0;
};

struct PolarizabilityShift {
    double shift_hz = 0.0;
    double total_polarizability = 0.0;
    bool trapped_at_dressed_minima = false;  // total polarisability < 0
};

PolarizabilityShift polarizability_shift(const HyperfineState& state, const PolarizabilityInput& input);

/// True when two lattice depths agree within `factor` either way.
bool depth_comparable(double depth_a_hz, double depth_b_hz, double factor = 2.0);

struct GradientConfig {
    double gradient_gauss_per_cm = 0.0;
    std::optional<double> site_spacing_m;  // defaults to clock_wavelength / 2

    double spacing(const Species& species) const;
};

double energy_gradient_hz_per_cm(const GradientConfig& grad, const Species& species);

/// Frequency difference (Hz) of the addressing state between neighbouring sites.
double gradient_site_splitting(const GradientConfig& grad, const Species& species);

struct AddressabilityReport {
    double gradient_gauss_per_cm = 0.0;
    double site_spacing_m = 0.0;
    double energy_gradient_hz_per_cm = 0.0;
    double site_splitting_hz = 0.0;
    double trap_omega = 0.0;
    double raman_rabi = 0.0;
    double band_factor = 0.0;
    double min_readout_time_s = 0.0;
    bool site_resolvable = false;
    bool band_safe = false;
    bool addressable = false;
};

AddressabilityReport readout_addressability(const GradientConfig& grad, const Species& species,
                                            double trap_omega, double raman_rabi,
                                            double band_factor = 10.0);

nlohmann::json to_json(const AddressabilityReport& report);

}  // namespace dresslat
