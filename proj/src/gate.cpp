#include "dresslat/gate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dresslat/errors.hpp"
#include "dresslat/parallel.hpp"
#include "dresslat/units.hpp"

namespace dresslat {

namespace {

constexpr Complex kI{0.0, 1.0};

std::pair<int, int> transition_levels(Transition t)
{
    using namespace atom_basis;
    return t == Transition::ZeroToZeroX ? std::pair{kZero, kZeroX} : std::pair{kOne, kOneX};
}

void check_bit(int q)
{
    if (q != 0 && q != 1) throw DomainError("logical bits must be 0 or 1");
}

// Coupling direction for a pulse phase: cos(phase) X + sin(phase) Y.
Eigen::Matrix2cd coupling_axis(double phase)
{
    Eigen::Matrix2cd n;
    n << 0.0, std::exp(-kI * phase), std::exp(kI * phase), 0.0;
    return n;
}

// exp(-i H T) for H = (Omega/2) n - Delta |x><x|, closed form.
Eigen::Matrix2cd detuned_unitary(double rabi, double detuning, double duration, double phase)
{
    Eigen::Matrix2cd sz;
    sz << 1.0, 0.0, 0.0, -1.0;
    const double generalized = std::hypot(rabi, detuning);
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    if (generalized > 0.0) {
        const double angle = 0.5 * generalized * duration;
        const Eigen::Matrix2cd axis = (rabi * coupling_axis(phase) + detuning * sz) / generalized;
        u = std::cos(angle) * Eigen::Matrix2cd::Identity() - kI * std::sin(angle) * axis;
    }
    return std::exp(kI * (0.5 * detuning * duration)) * u;
}

// No-jump propagator of the lossy colocated pair, read off from coherences
// with an uncoupled reference level in a 4-level Lindblad model
// {ref, q, x, lost}; the reference carries the phase information that
// populations alone would lose.
Eigen::Matrix2cd lossy_propagator(const Pulse& pulse, const BlockadeModel& model)
{
    constexpr int kRef = 0, kQ = 1, kX = 2, kSink = 3;
    const double duration = pulse.area / model.rabi;

    LindbladModel lindblad;
    lindblad.hamiltonian = CMatrix::Zero(4, 4);
    lindblad.hamiltonian(kQ, kX) = 0.5 * model.rabi * std::exp(-kI * pulse.phase);
    lindblad.hamiltonian(kX, kQ) = 0.5 * model.rabi * std::exp(kI * pulse.phase);
    lindblad.hamiltonian(kX, kX) = -model.interaction;
    CMatrix jump = CMatrix::Zero(4, 4);
    jump(kSink, kX) = 1.0;
    lindblad.jumps.push_back({jump, model.loss_rate});

    IntegratorParams params =
        default_params(LossSystem{model.rabi, model.interaction, model.loss_rate}, duration);
    params.stride = std::numeric_limits<int>::max();

    Eigen::Matrix2cd k;
    for (int column = 0; column < 2; ++column) {
        CVector chi = CVector::Zero(4);
        chi(kRef) = std::numbers::sqrt2 / 2.0;
        chi(column == 0 ? kQ : kX) = std::numbers::sqrt2 / 2.0;
        const Trajectory traj = evolve(lindblad, DensityMatrix::pure(chi), params);
        const CMatrix& rho = traj.final_state().matrix();
        k(0, column) = 2.0 * rho(kQ, kRef);
        k(1, column) = 2.0 * rho(kX, kRef);
    }
    return k;
}

// Apply `op` to one atom's (q, x) levels. When `blocked_op` is given it
// replaces `op` on the components whose partner is in |0x>.
void apply_to_atom(PairState& pair, int atom, std::pair<int, int> levels, const Eigen::Matrix2cd& op,
                   const Eigen::Matrix2cd* blocked_op)
{
    for (int partner = 0; partner < atom_basis::kDim; ++partner) {
        const Eigen::Matrix2cd& m =
            (blocked_op != nullptr && partner == atom_basis::kZeroX) ? *blocked_op : op;
        auto idx = [&](int level) {
            return atom == 0 ? PairState::index(level, partner) : PairState::index(partner, level);
        };
        const Complex a = pair.amp(idx(levels.first));
        const Complex b = pair.amp(idx(levels.second));
        pair.amp(idx(levels.first)) = m(0, 0) * a + m(0, 1) * b;
        pair.amp(idx(levels.second)) = m(1, 0) * a + m(1, 1) * b;
    }
}

constexpr int logical_index(int q1, int q2) { return 2 * q1 + q2; }

}  // namespace

AtomState AtomState::basis(int k)
{
    if (k < 0 || k >= atom_basis::kDim) throw DomainError("atom basis index out of range");
    AtomState s;
    s.amp(k) = 1.0;
    return s;
}

PairState PairState::product(const AtomState& first, const AtomState& second, bool colocated)
{
    PairState p;
    p.colocated = colocated;
    for (int a = 0; a < atom_basis::kDim; ++a) {
        for (int b = 0; b < atom_basis::kDim; ++b) p.amp(index(a, b)) = first.amp(a) * second.amp(b);
    }
    return p;
}

std::pair<int, int> shifted_sites(int q1, int q2)
{
    check_bit(q1);
    check_bit(q2);
    return {0 - q1, 1 - q2};
}

std::pair<int, int> unshifted_sites(std::pair<int, int> sites, int q1, int q2)
{
    check_bit(q1);
    check_bit(q2);
    return {sites.first + q1, sites.second + q2};
}

bool transport_colocate(int q1, int q2)
{
    const auto [s1, s2] = shifted_sites(q1, q2);
    return s1 == s2;
}

BlockadeModel BlockadeModel::perfect(double rabi) { return {BlockadeKind::Perfect, rabi, 0.0, 0.0}; }

BlockadeModel BlockadeModel::with_interaction(double rabi, double interaction)
{
    return {BlockadeKind::Interaction, rabi, interaction, 0.0};
}

BlockadeModel BlockadeModel::lossy(double rabi, double loss_rate)
{
    return {BlockadeKind::Lossy, rabi, 0.0, loss_rate};
}

BlockadeModel BlockadeModel::combined(double rabi, double interaction, double loss_rate)
{
    return {BlockadeKind::Combined, rabi, interaction, loss_rate};
}

void BlockadeModel::validate() const
{
    if (!all_finite({rabi, interaction, loss_rate})) throw DomainError("blockade parameters must be finite");
    if (!(rabi > 0.0)) throw DomainError("pulse Rabi frequency must be positive");
    if (loss_rate < 0.0) throw DomainError("loss rate must be >= 0");
    if (kind == BlockadeKind::Lossy && interaction != 0.0) {
        throw DomainError("lossy blockade has no interaction shift; use the combined model");
    }
    if (kind == BlockadeKind::Interaction && loss_rate != 0.0) {
        throw DomainError("interaction blockade has no loss; use the combined model");
    }
}

std::string BlockadeModel::label() const
{
    switch (kind) {
    case BlockadeKind::Perfect: return "perfect";
    case BlockadeKind::Interaction: return "interaction";
    case BlockadeKind::Lossy: return "lossy";
    case BlockadeKind::Combined: return "combined";
    }
    return "unknown";
}

Eigen::Matrix2cd pulse_rotation(double area, double phase)
{
    return std::cos(0.5 * area) * Eigen::Matrix2cd::Identity() -
           kI * std::sin(0.5 * area) * coupling_axis(phase);
}

Eigen::Matrix2cd blocked_propagator(const Pulse& pulse, const BlockadeModel& model)
{
    model.validate();
    if (!(pulse.area >= 0.0) || !std::isfinite(pulse.area)) throw DomainError("pulse area must be >= 0");
    if (pulse.area == 0.0) return Eigen::Matrix2cd::Identity();

    switch (model.kind) {
    case BlockadeKind::Perfect:
        return Eigen::Matrix2cd::Identity();
    case BlockadeKind::Interaction:
        return detuned_unitary(model.rabi, model.interaction, pulse.area / model.rabi, pulse.phase);
    case BlockadeKind::Lossy:
    case BlockadeKind::Combined:
        // Without a loss channel the closed-form detuned rotation is exact.
        if (model.loss_rate == 0.0) {
            return detuned_unitary(model.rabi, model.interaction, pulse.area / model.rabi, pulse.phase);
        }
        return lossy_propagator(pulse, model);
    }
    throw DomainError("unknown blockade model");
}

PulseResult apply_pulse(const AtomState& state, const Pulse& pulse, bool blocked, const BlockadeModel& model)
{
    const auto [q, x] = transition_levels(pulse.transition);
    const Eigen::Matrix2cd op = blocked ? blocked_propagator(pulse, model) : pulse_rotation(pulse.area, pulse.phase);
    PulseResult out{state, 0.0};
    const Complex a = state.amp(q);
    const Complex b = state.amp(x);
    out.state.amp(q) = op(0, 0) * a + op(0, 1) * b;
    out.state.amp(x) = op(1, 0) * a + op(1, 1) * b;
    out.loss = state.norm_sq() - out.state.norm_sq();
    return out;
}

ProtocolTrace blockade_protocol(int q1, int q2, const BlockadeModel& model)
{
    check_bit(q1);
    check_bit(q2);
    model.validate();

    ProtocolTrace trace;
    trace.q1 = q1;
    trace.q2 = q2;
    const bool colocated = transport_colocate(q1, q2);
    PairState state = PairState::product(AtomState::basis(q1), AtomState::basis(q2), colocated);
    trace.steps[0] = state;

    const Pulse excite{Transition::ZeroToZeroX, std::numbers::pi, 0.0};
    const Pulse cycle{Transition::OneToOneX, 2.0 * std::numbers::pi, 0.0};
    const auto zero_levels = transition_levels(Transition::ZeroToZeroX);
    const auto one_levels = transition_levels(Transition::OneToOneX);

    const Eigen::Matrix2cd pi_pulse = pulse_rotation(excite.area, excite.phase);
    for (int atom = 0; atom < 2; ++atom) apply_to_atom(state, atom, zero_levels, pi_pulse, nullptr);
    trace.steps[1] = state;

    const Eigen::Matrix2cd free_cycle = pulse_rotation(cycle.area, cycle.phase);
    if (colocated) {
        const Eigen::Matrix2cd blocked = blocked_propagator(cycle, model);
        for (int atom = 0; atom < 2; ++atom) apply_to_atom(state, atom, one_levels, free_cycle, &blocked);
    } else {
        for (int atom = 0; atom < 2; ++atom) apply_to_atom(state, atom, one_levels, free_cycle, nullptr);
    }
    trace.steps[2] = state;

    for (int atom = 0; atom < 2; ++atom) apply_to_atom(state, atom, zero_levels, pi_pulse, nullptr);
    trace.steps[3] = state;

    trace.loss_probability = std::max(0.0, 1.0 - state.norm_sq());
    return trace;
}

LogicalMap ideal_controlled_phase()
{
    LogicalMap u = LogicalMap::Identity();
    u(logical_index(0, 1), logical_index(0, 1)) = -1.0;
    return u;
}

double process_fidelity(const LogicalMap& achieved)
{
    const Complex overlap = (ideal_controlled_phase().adjoint() * achieved).trace();
    return std::norm(overlap) / 16.0;
}

GateReport gate_truth_table(const BlockadeModel& model)
{
    model.validate();
    GateReport report;
    report.model = model.label();
    report.logical_map = LogicalMap::Zero();

    for (int q1 = 0; q1 < 2; ++q1) {
        for (int q2 = 0; q2 < 2; ++q2) {
            const int column = logical_index(q1, q2);
            ProtocolTrace trace = blockade_protocol(q1, q2, model);
            for (int r1 = 0; r1 < 2; ++r1) {
                for (int r2 = 0; r2 < 2; ++r2) {
                    report.logical_map(logical_index(r1, r2), column) = trace.final_state().amplitude(r1, r2);
                }
            }
            report.max_loss_probability = std::max(report.max_loss_probability, trace.loss_probability);
            report.rows[column] = std::move(trace);
        }
    }

    // Each basis branch follows its own transport path, so the superposition
    // result is the linear combination of the branch results.
    const Eigen::Vector4cd input = Eigen::Vector4cd::Constant(0.5);
    const Eigen::Vector4cd out = report.logical_map * input;
    for (int k = 0; k < 4; ++k) report.superposition_out[k] = out(k);

    report.process_fidelity = std::min(1.0, process_fidelity(report.logical_map));
    const Complex a01 = report.logical_map(logical_index(0, 1), logical_index(0, 1));
    report.residual_phase = std::abs(a01) > 0.0 ? std::arg(-a01) : std::numeric_limits<double>::quiet_NaN();

    if (model.loss_rate > 0.0) {
        const GammaEff g = gamma_eff(LossSystem{model.rabi, model.interaction, model.loss_rate});
        report.loss_to_gate_time_ratio = model.rabi / (kTwoPi * g.rate);
    }
    return report;
}

namespace {

nlohmann::json complex_pair(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

const char* const kLogicalLabels[4] = {"00", "01", "10", "11"};

nlohmann::json logical_amplitudes(const PairState& state)
{
    nlohmann::json out = nlohmann::json::object();
    for (int q1 = 0; q1 < 2; ++q1) {
        for (int q2 = 0; q2 < 2; ++q2) out[kLogicalLabels[logical_index(q1, q2)]] = complex_pair(state.amplitude(q1, q2));
    }
    return out;
}

}  // namespace

nlohmann::json to_json(const GateReport& report)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const ProtocolTrace& row : report.rows) {
        const PairState& fin = row.final_state();
        double logical_norm = 0.0;
        for (int q1 = 0; q1 < 2; ++q1) {
            for (int q2 = 0; q2 < 2; ++q2) logical_norm += std::norm(fin.amplitude(q1, q2));
        }
        rows.push_back({
            {"input", kLogicalLabels[logical_index(row.q1, row.q2)]},
            {"colocated", fin.colocated},
            {"output", logical_amplitudes(fin)},
            {"loss_probability", row.loss_probability},
            {"leakage_probability", std::max(0.0, fin.norm_sq() - logical_norm)},
        });
    }
    nlohmann::json superposition = nlohmann::json::object();
    for (int k = 0; k < 4; ++k) superposition[kLogicalLabels[k]] = complex_pair(report.superposition_out[k]);

    nlohmann::json j = {
        {"model", report.model},
        {"truth_table", rows},
        {"superposition_output", superposition},
        {"process_fidelity", report.process_fidelity},
        {"max_loss_probability", report.max_loss_probability},
        {"residual_phase_rad", std::isfinite(report.residual_phase) ? nlohmann::json(report.residual_phase)
                                                                    : nlohmann::json(nullptr)},
    };
    if (report.loss_to_gate_time_ratio) j["loss_to_gate_time_ratio"] = *report.loss_to_gate_time_ratio;
    return j;
}

BlockadeModel scan_model(ScanFamily family, double ratio, double other_ratio, double rabi)
{
    if (!all_finite({ratio, other_ratio, rabi})) throw DomainError("scan parameters must be finite");
    if (family == ScanFamily::Lossy) {
        if (ratio < 0.0) throw DomainError("loss ratio must be >= 0");
        if (other_ratio == 0.0) return BlockadeModel::lossy(rabi, ratio * rabi);
        return BlockadeModel::combined(rabi, other_ratio * rabi, ratio * rabi);
    }
    if (other_ratio < 0.0) throw DomainError("loss ratio must be >= 0");
    if (other_ratio == 0.0) return BlockadeModel::with_interaction(rabi, ratio * rabi);
    return BlockadeModel::combined(rabi, ratio * rabi, other_ratio * rabi);
}

std::vector<ScanPoint> fidelity_scan(ScanFamily family, std::span<const double> ratios, double other_ratio,
                                     double rabi, int threads)
{
    if (ratios.empty()) throw DomainError("scan grid must be nonempty");
    std::vector<BlockadeModel> models;
    models.reserve(ratios.size());
    for (double r : ratios) {
        models.push_back(scan_model(family, r, other_ratio, rabi));
        models.back().validate();
    }

    std::vector<ScanPoint> points(ratios.size());
    parallel_for(ratios.size(), threads, [&](std::size_t i) {
        const GateReport report = gate_truth_table(models[i]);
        points[i] = {ratios[i], report.rows[logical_index(0, 1)].loss_probability, report.process_fidelity};
    });
    return points;
}

CollisionalPhase collisional_phase_gate(double onsite_interaction, double hold_time, std::optional<double> trap_omega)
{
    if (!all_finite({onsite_interaction, hold_time})) throw DomainError("collisional gate inputs must be finite");
    if (hold_time < 0.0) throw DomainError("hold time must be >= 0");
    CollisionalPhase out;
    out.phase = onsite_interaction * hold_time;
    if (trap_omega) {
        if (!(*trap_omega > 0.0)) throw DomainError("trap frequency must be positive");
        out.single_band = std::abs(onsite_interaction) <= *trap_omega;
    }
    return out;
}

}  // namespace dresslat
