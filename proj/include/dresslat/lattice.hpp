#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dresslat/species.hpp"

namespace dresslat {

enum class Qubit { Zero = 0, One = 1 };

inline int index(Qubit q) { return static_cast<int>(q); }

/// One standing-wave coupling on the clock transition for a single
/// nuclear-spin state: Omega(x) = omega_peak * sin(wavenumber * x + phase).
struct DressingField {
    double omega_peak = 0.0;  // rad/s
    double detuning = 0.0;    // rad/s
    double wavenumber = 0.0;  // 1/m
    double phase = 0.0;       // rad
    Qubit spin = Qubit::Zero;

    void validate() const;
};

/// Peak off-resonant light shifts of |g> and |e> from one standing wave at
/// full intensity. Either sign is allowed.
struct StarkConfig {
    double shift_g_peak = 0.0;  // rad/s
    double shift_e_peak = 0.0;  // rad/s
};

struct LatticeConfig {
    Species species;
    DressingField field_0;
    DressingField field_1{.spin = Qubit::One};
    StarkConfig stark;
    bool include_offresonant = true;

    void validate() const;
    const DressingField& field(Qubit q) const { return q == Qubit::Zero ? field_0 : field_1; }
    DressingField& field(Qubit q) { return q == Qubit::Zero ? field_0 : field_1; }
    double wavenumber() const { return field_0.wavenumber; }

    /// Spatial period of every x-dependent quantity (pi / k_l): all terms
    /// enter through sin^2.
    double lattice_period() const;

    /// Largest energy scale in the configuration, used for relative tolerances.
    double energy_scale() const;
};

/// Copy of `config` with field_0.phase = 0 and field_1.phase = relative_phase.
LatticeConfig with_relative_phase(LatticeConfig config, double relative_phase);

struct PotentialSample {
    double x = 0.0;
    double v_lower = 0.0;      // rad/s
    double v_upper = 0.0;      // rad/s
    double admixture_e = 0.0;  // |<e|Psi_->|^2
};

struct StarkShifts {
    double g = 0.0;
    double e = 0.0;
};

/// Real symmetric 2x2 Hamiltonian in the {|g>, |e>} basis.
struct Hamiltonian2 {
    double diag_g = 0.0;
    double coupling = 0.0;  // off-diagonal element, Omega(x)/2
    double diag_e = 0.0;
};

struct DressedEigensystem {
    double lower = 0.0;
    double upper = 0.0;
    double admixture_e_lower = 0.0;
};

/// Eigenvalues and lower-state excited weight of a 2x2 real symmetric matrix,
/// evaluated without cancellation in either branch.
DressedEigensystem dressed_eigensystem(const Hamiltonian2& h);

double rabi_profile(const DressingField& field, double x);

/// Off-resonant shifts seen by every atom: both standing waves contribute
/// their intensity, so shift_s(x) = dE_s * (sin^2(kx + phi0) + sin^2(kx + phi1)).
StarkShifts stark_profiles(const LatticeConfig& config, double x);

/// Position-dependent single-atom Hamiltonian for the given qubit lattice.
Hamiltonian2 local_hamiltonian(const LatticeConfig& config, Qubit spin, double x);

PotentialSample adiabatic_potentials(const LatticeConfig& config, Qubit spin, double x);

enum class AdmixtureWeight {
    Uniform,             // plain average over one lattice period
    GroundStateDensity,  // weighted by the harmonic ground-state density at the minimum
};

/// Excited-state admixture of the lower dressed state averaged over one
/// lattice period, with field_0 at phase 0 and field_1 at `relative_phase`.
double period_averaged_admixture(const LatticeConfig& config, Qubit spin, double relative_phase,
                                 AdmixtureWeight weight = AdmixtureWeight::Uniform,
                                 int samples = 2048);

/// Uniform grid x_j = j * span / n over `periods` lattice periods.
std::vector<double> period_grid(const LatticeConfig& config, int points_per_period,
                                int periods = 1);

struct ScanRow {
    double phase = 0.0;
    Qubit spin = Qubit::Zero;
    PotentialSample sample;
};

/// Rows ordered by (phase as given, spin, x as given). field_0 is held at
/// phase 0, field_1 is moved to each requested phase.
std::vector<ScanRow> potential_scan(const LatticeConfig& config, std::span<const double> phases,
                                    std::span<const double> grid);

struct PotentialMinimum {
    double x = 0.0;
    double value = 0.0;      // rad/s
    double curvature = 0.0;  // d^2 V_- / dx^2 in rad/s/m^2
};

/// Coarse scan (256 points per period) followed by golden-section refinement;
/// curvature from a five-point stencil with step period/4096.
PotentialMinimum locate_lower_minimum(const LatticeConfig& config, Qubit spin);

/// Harmonic trap frequency (rad/s) at the minimum of the lower potential.
double trap_frequency(const LatticeConfig& config, Qubit spin);

enum class LossKind { SingleFrequency, TwoFrequency };

/// exp(-numerator / trap_omega) times a caller-supplied prefactor. The
/// numerator is delta_i for single-frequency loss and omega_diff for the
/// two-frequency case; the functional form is the same.
double nonadiabatic_loss_scaling(LossKind kind, double numerator, double trap_omega,
                                 double prefactor = 1.0);

using HamiltonianField = std::function<Hamiltonian2(double x)>;

/// |<Psi_+(x)| d/dx Psi_-(x)>| by finite differences of gauge-aligned
/// eigenvectors. Throws DomainError when the channels are degenerate.
double channel_coupling(const HamiltonianField& hamiltonian, double x, double step,
                        double energy_scale);

double nonadiabatic_coupling(const LatticeConfig& config, Qubit spin, double x);

}  // namespace dresslat
