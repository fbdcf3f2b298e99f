#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dresslat/open_system.hpp"

namespace dresslat {

using Complex = std::complex<double>;

namespace atom_basis {
inline constexpr int kZero = 0;
inline constexpr int kOne = 1;
inline constexpr int kZeroX = 2;  // auxiliary 3P2 level for |0>
inline constexpr int kOneX = 3;   // auxiliary 3P2 level for |1>
inline constexpr int kLost = 4;
inline constexpr int kDim = 5;
}  // namespace atom_basis

/// Single-atom amplitudes over {|0>, |1>, |0x>, |1x>, |lost>}. Loss shows up
/// as a norm deficit; the |lost> slot keeps the basis aligned with the pair
/// space and is never populated coherently.
struct AtomState {
    CVector amp = CVector::Zero(atom_basis::kDim);

    static AtomState basis(int k);
    double norm_sq() const { return amp.squaredNorm(); }
};

/// Two-atom amplitudes over the 25-dim product basis, index 5 * a + b.
struct PairState {
    CVector amp = CVector::Zero(atom_basis::kDim * atom_basis::kDim);
    bool colocated = false;

    static PairState product(const AtomState& first, const AtomState& second, bool colocated);
    static int index(int first, int second) { return atom_basis::kDim * first + second; }
    Complex amplitude(int first, int second) const { return amp(index(first, second)); }
    double norm_sq() const { return amp.squaredNorm(); }
};

// Transport: the spin-1 lattice is shifted one site to the left. The first
// qubit sits on site 0 and the second on site 1.
std::pair<int, int> shifted_sites(int q1, int q2);
std::pair<int, int> unshifted_sites(std::pair<int, int> sites, int q1, int q2);

/// True iff the transport brings the pair onto one site, i.e. (q1, q2) = (0, 1).
bool transport_colocate(int q1, int q2);

enum class BlockadeKind { Perfect, Interaction, Lossy, Combined };

struct BlockadeModel {
    BlockadeKind kind = BlockadeKind::Perfect;
    double rabi = 1.0;         // pulse Rabi frequency Omega, rad/s
    double interaction = 0.0;  // Delta, rad/s
    double loss_rate = 0.0;    // Gamma, rad/s

    static BlockadeModel perfect(double rabi);
    static BlockadeModel with_interaction(double rabi, double interaction);
    static BlockadeModel lossy(double rabi, double loss_rate);
    static BlockadeModel combined(double rabi, double interaction, double loss_rate);

    void validate() const;
    std::string label() const;
};

enum class Transition { ZeroToZeroX, OneToOneX };

struct Pulse {
    Transition transition = Transition::ZeroToZeroX;
    double area = std::numbers::pi;  // rad
    double phase = 0.0;              // rad
};

/// Unblocked pulse on the (q, qx) pair: exp(-i (area/2) (cos(phase) X + sin(phase) Y)).
Eigen::Matrix2cd pulse_rotation(double area, double phase);

/// Map applied to (q, qx) while the pulse is blocked by a colocated |0x>
/// partner. Unitary for the Perfect and Interaction variants; a contraction
/// once a loss channel is present.
Eigen::Matrix2cd blocked_propagator(const Pulse& pulse, const BlockadeModel& model);

struct PulseResult {
    AtomState state;
    double loss = 0.0;
};

PulseResult apply_pulse(const AtomState& state, const Pulse& pulse, bool blocked,
                        const BlockadeModel& model);

struct ProtocolTrace {
    int q1 = 0;
    int q2 = 0;
    std::array<PairState, 4> steps;  // initial, after step 1, 2, 3
    double loss_probability = 0.0;   // 1 - final norm^2

    const PairState& final_state() const { return steps[3]; }
};

/// pi on 0->0x for both atoms, 2pi on 1->1x (blocked for a colocated |0x>
/// partner), pi on 0x->0.
ProtocolTrace blockade_protocol(int q1, int q2, const BlockadeModel& model);

using LogicalMap = Eigen::Matrix4cd;

/// |tr(U_ideal^+ M)|^2 / 16 with U_ideal = diag(1, -1, 1, 1) in |q1 q2> order.
double process_fidelity(const LogicalMap& achieved);
LogicalMap ideal_controlled_phase();

struct GateReport {
    std::string model;
    std::array<ProtocolTrace, 4> rows;
    LogicalMap logical_map;                    // column j: logical amplitudes from basis input j
    std::array<Complex, 4> superposition_out;  // from (|0>+|1>)(|0>+|1>)/2
    double process_fidelity = 0.0;
    double max_loss_probability = 0.0;
    double residual_phase = 0.0;               // arg of the |01> amplitude relative to -1
    std::optional<double> loss_to_gate_time_ratio;  // Gamma / (2 pi Omega) from Gamma_eff
};

GateReport gate_truth_table(const BlockadeModel& model);

/// Rows use complex numbers as [re, im] pairs.
nlohmann::json to_json(const GateReport& report);

enum class ScanFamily {
    Lossy,        // ratio = Gamma / Omega, Delta = other_ratio * Omega
    Interaction,  // ratio = Delta / Omega, Gamma = other_ratio * Omega
};

struct ScanPoint {
    double ratio = 0.0;
    double loss_probability = 0.0;  // loss of the blocked |01> branch at t Omega = 2 pi
    double process_fidelity = 0.0;
};

BlockadeModel scan_model(ScanFamily family, double ratio, double other_ratio, double rabi);

std::vector<ScanPoint> fidelity_scan(ScanFamily family, std::span<const double> ratios,
                                     double other_ratio = 0.0, double rabi = 1.0, int threads = 1);

struct CollisionalPhase {
    double phase = 0.0;               // rad
    std::optional<bool> single_band;  // U <= omega, when a trap frequency is given
};

CollisionalPhase collisional_phase_gate(double onsite_interaction, double hold_time,
                                        std::optional<double> trap_omega = std::nullopt);

}  // namespace dresslat
