#include "dresslat/budget.hpp"

#include <algorithm>
#include <cmath>

#include "dresslat/errors.hpp"
#include "dresslat/units.hpp"

namespace dresslat {

void NoiseSpectrum::validate() const
{
    if (frequency_hz.size() != psd.size()) throw DomainError("noise spectrum columns differ in length");
    if (frequency_hz.size() < 2) throw DomainError("noise spectrum needs at least two points");
    for (std::size_t i = 0; i < frequency_hz.size(); ++i) {
        if (!all_finite({frequency_hz[i], psd[i]}) || psd[i] < 0.0) {
            throw DomainError("noise spectrum entries must be finite and nonnegative");
        }
        if (i > 0 && !(frequency_hz[i] > frequency_hz[i - 1])) {
            throw DomainError("noise spectrum frequencies must increase strictly");
        }
    }
}

double NoiseSpectrum::at(double f) const
{
    validate();
    if (!(f >= frequency_hz.front() && f <= frequency_hz.back())) {
        throw DomainError("noise spectrum does not cover the requested frequency");
    }
    const auto hi = std::lower_bound(frequency_hz.begin(), frequency_hz.end(), f);
    const std::size_t j = static_cast<std::size_t>(hi - frequency_hz.begin());
    if (frequency_hz[j] == f) return psd[j];
    const double t = (f - frequency_hz[j - 1]) / (frequency_hz[j] - frequency_hz[j - 1]);
    return psd[j - 1] + t * (psd[j] - psd[j - 1]);
}

void BudgetInput::validate() const
{
    if (!all_finite({trap_omega, wavelength_epsilon, depth_fluctuation, lattice_depth, detuning_noise, rabi,
                     detuning, p0_admixture, p0_pair_loss_rate})) {
        throw DomainError("budget inputs must be finite");
    }
    if (!(trap_omega > 0.0)) throw DomainError("trap frequency must be positive");
    if (wavelength_epsilon < 0.0 || depth_fluctuation < 0.0 || lattice_depth < 0.0 || detuning_noise < 0.0 ||
        rabi < 0.0 || p0_admixture < 0.0 || p0_pair_loss_rate < 0.0) {
        throw DomainError("budget inputs must be nonnegative");
    }
    noise.validate();
}

BudgetReport decoherence_budget(const BudgetInput& in, const Species& species)
{
    in.validate();
    species.validate();
    BudgetReport r;

    // The spectrum is sampled at twice the trap frequency in ordinary units.
    r.psd_at_twice_trap = in.noise.at(2.0 * angular_to_hz(in.trap_omega));
    r.heating_rate = kPi * kPi * in.trap_omega * in.trap_omega * r.psd_at_twice_trap / 2.0;

    // Delta_omega / 2 = sqrt(dV E) - sqrt(dV E / (1+eps)^2), E = 4 pi^2 hbar^2 / (2 m lambda^2).
    // The difference is rewritten as sqrt(dV E) * eps / (1 + eps), which is
    // algebraically identical and free of cancellation.
    const double lambda = species.clock_wavelength_m;
    const double recoil_scale = 4.0 * kPi * kPi * kHbar * kHbar / (2.0 * species.mass_kg * lambda * lambda);
    const double dv_energy = kHbar * in.depth_fluctuation * in.lattice_depth;
    const double root = std::sqrt(dv_energy * recoil_scale);
    const double eps = in.wavelength_epsilon;
    r.delta_omega_exact = 2.0 * root * (eps / (1.0 + eps)) / kHbar;
    r.delta_omega_linear = 2.0 * eps * root / kHbar;
    r.delta_omega_relative_difference =
        r.delta_omega_linear != 0.0
            ? std::abs(r.delta_omega_exact - r.delta_omega_linear) / std::abs(r.delta_omega_linear)
            : 0.0;
    if (r.delta_omega_exact != 0.0) r.dephasing_time_s = 1.0 / std::abs(r.delta_omega_exact);

    if (in.rabi > 0.0) {
        const double ratio = in.detuning_noise / in.rabi;
        r.depth_noise_estimate = ratio * ratio;
        r.depth_noise_estimate_valid = in.rabi >= 10.0 * std::abs(in.detuning);
    }

    r.pair_loss_suppression = in.p0_admixture * in.p0_admixture;
    r.effective_pair_loss_rate = in.p0_pair_loss_rate * r.pair_loss_suppression;
    return r;
}

nlohmann::json to_json(const BudgetReport& r)
{
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {
        {"psd_at_twice_trap_per_hz", r.psd_at_twice_trap},
        {"heating_rate_per_s", r.heating_rate},
        {"delta_omega_exact_rad_s", r.delta_omega_exact},
        {"delta_omega_linear_rad_s", r.delta_omega_linear},
        {"delta_omega_relative_difference", r.delta_omega_relative_difference},
        {"dephasing_time_s", opt(r.dephasing_time_s)},
        {"depth_noise_estimate", opt(r.depth_noise_estimate)},
        {"depth_noise_estimate_valid", r.depth_noise_estimate_valid},
        {"pair_loss_suppression", r.pair_loss_suppression},
        {"effective_pair_loss_rate_rad_s", r.effective_pair_loss_rate},
    };
}

}  // namespace dresslat
