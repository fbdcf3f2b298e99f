#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "dresslat/species.hpp"

namespace dresslat {

/// Tabulated one-sided power spectrum of fractional trap-amplitude noise,
/// frequencies in Hz (ascending), PSD in 1/Hz. Linear interpolation.
struct NoiseSpectrum {
    std::vector<double> frequency_hz;
    std::vector<double> psd;

    void validate() const;
    /// Throws DomainError outside the tabulated range.
    double at(double frequency_hz) const;
};

struct BudgetInput {
    double trap_omega = 0.0;         // omega, rad/s
    NoiseSpectrum noise;             // S_e(f)
    double wavelength_epsilon = 0.0; // lattice wavelengths lambda and (1 + eps) lambda
    double depth_fluctuation = 0.0;  // Delta V as a fraction of the lattice depth
    double lattice_depth = 0.0;      // V, rad/s; converts Delta V to an energy
    double detuning_noise = 0.0;     // Delta delta, rad/s
    double rabi = 0.0;               // Omega of the dressing field, rad/s
    double detuning = 0.0;           // delta of the dressing field, rad/s
    double p0_admixture = 0.0;       // eps_3, single-atom 3P0 probability
    double p0_pair_loss_rate = 0.0;  // bare onsite 3P0-3P0 loss rate, rad/s

    void validate() const;
};

struct BudgetReport {
    double psd_at_twice_trap = 0.0;       // S_e(2 omega)
    double heating_rate = 0.0;            // pi^2 omega^2 S_e(2 omega) / 2
    double delta_omega_exact = 0.0;       // differential trap frequency, rad/s
    double delta_omega_linear = 0.0;      // first order in eps
    double delta_omega_relative_difference = 0.0;
    std::optional<double> dephasing_time_s;  // 1 / |Delta_omega|, absent when zero
    std::optional<double> depth_noise_estimate;  // (Delta delta / Omega)^2
    bool depth_noise_estimate_valid = false;     // Omega >= 10 |delta|
    double pair_loss_suppression = 0.0;   // eps_3^2
    double effective_pair_loss_rate = 0.0;
};

BudgetReport decoherence_budget(const BudgetInput& input, const Species& species);

nlohmann::json to_json(const BudgetReport& report);

}  // namespace dresslat
