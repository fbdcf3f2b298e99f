#include "dresslat/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dresslat/errors.hpp"
#include "dresslat/units.hpp"

namespace dresslat {

void DressingField::validate() const
{
    if (!all_finite({omega_peak, detuning, wavenumber, phase})) {
        throw DomainError("dressing field parameters must be finite");
    }
    if (omega_peak < 0.0) throw DomainError("dressing field Rabi frequency must be >= 0");
    if (wavenumber <= 0.0) throw DomainError("dressing field wavenumber must be positive");
}

void LatticeConfig::validate() const
{
    field_0.validate();
    field_1.validate();
    if (!all_finite({stark.shift_g_peak, stark.shift_e_peak})) {
        throw DomainError("Stark shifts must be finite");
    }
    if (std::abs(field_0.wavenumber - field_1.wavenumber) >
        1e-12 * std::max(field_0.wavenumber, field_1.wavenumber)) {
        throw DomainError("both dressing fields must share the lattice wavenumber");
    }
    if (field_0.spin == field_1.spin) throw DomainError("dressing fields must address distinct spins");
}

double LatticeConfig::lattice_period() const { return kPi / wavenumber(); }

double LatticeConfig::energy_scale() const
{
    double s = 0.0;
    for (const auto* f : {&field_0, &field_1}) {
        s = std::max({s, std::abs(f->detuning), f->omega_peak});
    }
    if (include_offresonant) {
        s = std::max({s, 2.0 * std::abs(stark.shift_g_peak), 2.0 * std::abs(stark.shift_e_peak)});
    }
    return s;
}

LatticeConfig with_relative_phase(LatticeConfig config, double relative_phase)
{
    config.field_0.phase = 0.0;
    config.field_1.phase = relative_phase;
    return config;
}

DressedEigensystem dressed_eigensystem(const Hamiltonian2& h)
{
    const double b = h.coupling;
    const double mean = 0.5 * (h.diag_g + h.diag_e);
    const double half_diff = 0.5 * (h.diag_g - h.diag_e);
    const double r = std::hypot(half_diff, b);
    const double det = h.diag_g * h.diag_e - b * b;

    DressedEigensystem out;
    if (mean > 0.0) {
        out.upper = mean + r;
        out.lower = det / out.upper;
    } else if (mean < 0.0) {
        out.lower = mean - r;
        out.upper = det / out.lower;
    } else {
        out.lower = -r;
        out.upper = r;
    }

    // Weight of |e> in the lower eigenvector: (1 + half_diff / r) / 2.
    if (r == 0.0) {
        out.admixture_e_lower = 0.5;
    } else if (half_diff < 0.0) {
        out.admixture_e_lower = b * b / (2.0 * r * (r - half_diff));
    } else {
        out.admixture_e_lower = 0.5 * (r + half_diff) / r;
    }
    return out;
}

double rabi_profile(const DressingField& field, double x)
{
    return field.omega_peak * std::sin(field.wavenumber * x + field.phase);
}

StarkShifts stark_profiles(const LatticeConfig& config, double x)
{
    if (!config.include_offresonant) return {};
    const double k = config.wavenumber();
    const double s0 = std::sin(k * x + config.field_0.phase);
    const double s1 = std::sin(k * x + config.field_1.phase);
    const double intensity = s0 * s0 + s1 * s1;
    return {config.stark.shift_g_peak * intensity, config.stark.shift_e_peak * intensity};
}

Hamiltonian2 local_hamiltonian(const LatticeConfig& config, Qubit spin, double x)
{
    const DressingField& f = config.field(spin);
    const StarkShifts shifts = stark_profiles(config, x);
    return {shifts.g, 0.5 * rabi_profile(f, x), -f.detuning + shifts.e};
}

PotentialSample adiabatic_potentials(const LatticeConfig& config, Qubit spin, double x)
{
    if (!std::isfinite(x)) throw DomainError("position must be finite");
    config.validate();
    const DressedEigensystem eig = dressed_eigensystem(local_hamiltonian(config, spin, x));
    return {x, eig.lower, eig.upper, eig.admixture_e_lower};
}

std::vector<double> period_grid(const LatticeConfig& config, int points_per_period, int periods)
{
    if (points_per_period <= 0 || periods <= 0) {
        throw DomainError("grid must contain at least one point per period");
    }
    const std::size_t n = static_cast<std::size_t>(points_per_period) * periods;
    const double span = periods * config.lattice_period();
    std::vector<double> grid(n);
    for (std::size_t j = 0; j < n; ++j) grid[j] = span * static_cast<double>(j) / n;
    return grid;
}

namespace {

void check_scan_grid(const LatticeConfig& config, std::span<const double> grid)
{
    if (grid.empty()) throw DomainError("position grid must be nonempty");
    for (double x : grid) {
        if (!std::isfinite(x)) throw DomainError("position grid must be finite");
    }
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    const double period = config.lattice_period();
    const double extent = *hi - *lo;
    const double spacing = grid.size() > 1 ? extent / (grid.size() - 1) : 0.0;
    const double covered = extent + spacing;
    if (covered < period * (1.0 - 1e-9)) {
        throw DomainError("position grid must cover at least one lattice period");
    }
    if (grid.size() < 64.0 * covered / period * (1.0 - 1e-9)) {
        throw DomainError("position grid needs at least 64 points per lattice period");
    }
}

// Minimise a unimodal function on [a, b].
template <class F>
double golden_section(F&& f, double a, double b, double tol)
{
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double period_averaged_admixture(const LatticeConfig& config, Qubit spin, double relative_phase,
                                 AdmixtureWeight weight, int samples)
{
    if (samples <= 0) throw DomainError("admixture average needs at least one sample");
    const LatticeConfig shifted = with_relative_phase(config, relative_phase);
    shifted.validate();
    const double period = shifted.lattice_period();

    double x0 = 0.0;
    double width_sq = 0.0;
    if (weight == AdmixtureWeight::GroundStateDensity) {
        const PotentialMinimum minimum = locate_lower_minimum(shifted, spin);
        const double omega = trap_frequency(shifted, spin);
        x0 = minimum.x;
        width_sq = kHbar / (shifted.species.mass_kg * omega);
    }

    double sum = 0.0;
    double norm = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double x = period * (j + 0.5) / samples;
        const double p = dressed_eigensystem(local_hamiltonian(shifted, spin, x)).admixture_e_lower;
        double w = 1.0;
        if (weight == AdmixtureWeight::GroundStateDensity) {
            w = 0.0;
            for (int image = -3; image <= 3; ++image) {
                const double dx = x - x0 - image * period;
                w += std::exp(-dx * dx / width_sq);
            }
        }
        sum += w * p;
        norm += w;
    }
    return sum / norm;
}

std::vector<ScanRow> potential_scan(const LatticeConfig& config, std::span<const double> phases,
                                    std::span<const double> grid)
{
    if (phases.empty()) throw DomainError("phases must be nonempty");
    config.validate();
    check_scan_grid(config, grid);

    std::vector<ScanRow> rows;
    rows.reserve(phases.size() * 2 * grid.size());
    for (double phase : phases) {
        if (!std::isfinite(phase)) throw DomainError("phases must be finite");
        const LatticeConfig shifted = with_relative_phase(config, phase);
        for (Qubit spin : {Qubit::Zero, Qubit::One}) {
            for (double x : grid) {
                const DressedEigensystem eig =
                    dressed_eigensystem(local_hamiltonian(shifted, spin, x));
                rows.push_back({phase, spin, {x, eig.lower, eig.upper, eig.admixture_e_lower}});
            }
        }
    }
    return rows;
}

PotentialMinimum locate_lower_minimum(const LatticeConfig& config, Qubit spin)
{
    config.validate();
    const double period = config.lattice_period();
    auto v_lower = [&](double x) {
        return dressed_eigensystem(local_hamiltonian(config, spin, x)).lower;
    };

    constexpr int kCoarse = 256;
    std::array<double, kCoarse> values{};
    for (int j = 0; j < kCoarse; ++j) values[j] = v_lower(period * j / kCoarse);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double scale = config.energy_scale();
    if (scale == 0.0 || *hi - *lo <= 1e-12 * scale) {
        throw DomainError("no confinement: lower potential is flat");
    }

    const int j = static_cast<int>(lo - values.begin());
    const double step = period / kCoarse;
    const double xc = golden_section(v_lower, (j - 1) * step, (j + 1) * step, 1e-12 * period);

    const double h = period / 4096.0;
    const double curvature = (-v_lower(xc + 2 * h) + 16.0 * v_lower(xc + h) - 30.0 * v_lower(xc) +
                              16.0 * v_lower(xc - h) - v_lower(xc - 2 * h)) /
                             (12.0 * h * h);
    return {xc, v_lower(xc), curvature};
}

double trap_frequency(const LatticeConfig& config, Qubit spin)
{
    config.species.validate();
    const PotentialMinimum minimum = locate_lower_minimum(config, spin);
    if (!(minimum.curvature > 0.0)) {
        throw DomainError("no confinement: lower potential has no harmonic minimum");
    }
    return std::sqrt(kHbar * minimum.curvature / config.species.mass_kg);
}

double nonadiabatic_loss_scaling(LossKind /*kind*/, double numerator, double trap_omega,
                                 double prefactor)
{
    if (!(trap_omega > 0.0) || !std::isfinite(trap_omega)) {
        throw DomainError("trap frequency must be positive");
    }
    return prefactor * std::exp(-numerator / trap_omega);
}

namespace {

using Vec2 = std::array<double, 2>;

Vec2 lower_eigenvector(const Hamiltonian2& h, double lower)
{
    // Two candidate null vectors of (H - lower); keep the better conditioned one.
    Vec2 a{h.coupling, lower - h.diag_g};
    Vec2 b{lower - h.diag_e, h.coupling};
    const double na = std::hypot(a[0], a[1]);
    const double nb = std::hypot(b[0], b[1]);
    if (na >= nb) return {a[0] / na, a[1] / na};
    return {b[0] / nb, b[1] / nb};
}

double dot(const Vec2& u, const Vec2& v) { return u[0] * v[0] + u[1] * v[1]; }

}  // namespace

double channel_coupling(const HamiltonianField& hamiltonian, double x, double step,
                        double energy_scale)
{
    const Hamiltonian2 h0 = hamiltonian(x);
    const DressedEigensystem e0 = dressed_eigensystem(h0);
    if (e0.upper - e0.lower < 1e-12 * energy_scale || e0.upper == e0.lower) {
        throw DomainError("degenerate channels: dressed potentials touch");
    }
    const Vec2 centre = lower_eigenvector(h0, e0.lower);
    const Vec2 upper{-centre[1], centre[0]};

    auto aligned = [&](double xs) {
        const Hamiltonian2 hs = hamiltonian(xs);
        Vec2 v = lower_eigenvector(hs, dressed_eigensystem(hs).lower);
        if (dot(v, centre) < 0.0) v = {-v[0], -v[1]};
        return v;
    };

    const Vec2 p2 = aligned(x + 2 * step);
    const Vec2 p1 = aligned(x + step);
    const Vec2 m1 = aligned(x - step);
    const Vec2 m2 = aligned(x - 2 * step);
    Vec2 derivative{};
    for (int c = 0; c < 2; ++c) {
        derivative[c] = (-p2[c] + 8.0 * p1[c] - 8.0 * m1[c] + m2[c]) / (12.0 * step);
    }
    return std::abs(dot(upper, derivative));
}

double nonadiabatic_coupling(const LatticeConfig& config, Qubit spin, double x)
{
    config.validate();
    const double step = 1e-5 / config.wavenumber();
    return channel_coupling([&](double xs) { return local_hamiltonian(config, spin, xs); }, x, step,
                            config.energy_scale());
}

}  // namespace dresslat
