#include "dresslat/open_system.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>

#include "dresslat/errors.hpp"
#include "dresslat/format.hpp"
#include "dresslat/units.hpp"

namespace dresslat {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double inf_norm(const CMatrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

DensityMatrix::DensityMatrix(CMatrix rho)
    : rho_(std::move(rho))
{
    if (rho_.rows() != rho_.cols()) throw DomainError("density matrix must be square");
    if (rho_.rows() < 2) throw DomainError("density matrix dimension must be >= 2");
    if (!rho_.allFinite()) throw DomainError("density matrix entries must be finite");
    if (hermiticity_error() > 1e-12) throw DomainError("density matrix must be Hermitian");
}

DensityMatrix DensityMatrix::pure(const CVector& psi) { return DensityMatrix(psi * psi.adjoint()); }

DensityMatrix DensityMatrix::basis_state(int dim, int k)
{
    if (k < 0 || k >= dim) throw DomainError("basis index out of range");
    CMatrix rho = CMatrix::Zero(dim, dim);
    rho(k, k) = 1.0;
    return DensityMatrix(std::move(rho));
}

double DensityMatrix::hermiticity_error() const { return max_abs(rho_ - rho_.adjoint()); }

double DensityMatrix::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void LindbladModel::validate() const
{
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 2) {
        throw DomainError("Hamiltonian must be square with dimension >= 2");
    }
    if (!hamiltonian.allFinite()) throw DomainError("Hamiltonian entries must be finite");
    if (max_abs(hamiltonian - hamiltonian.adjoint()) > 1e-12 * std::max(1.0, max_abs(hamiltonian))) {
        throw DomainError("Hamiltonian must be Hermitian");
    }
    for (const auto& jump : jumps) {
        if (jump.op.rows() != hamiltonian.rows() || jump.op.cols() != hamiltonian.cols()) {
            throw DomainError("jump operator dimension does not match the Hamiltonian");
        }
        if (!(jump.rate >= 0.0) || !std::isfinite(jump.rate)) {
            throw DomainError("jump rates must be finite and >= 0");
        }
    }
}

CMatrix LindbladModel::effective_hamiltonian() const
{
    CMatrix h = hamiltonian;
    for (const auto& jump : jumps) h -= 0.5 * kI * jump.rate * (jump.op.adjoint() * jump.op);
    return h;
}

double LindbladModel::frequency_scale() const
{
    double s = inf_norm(hamiltonian);
    for (const auto& jump : jumps) s += jump.rate * inf_norm(jump.op.adjoint() * jump.op);
    return s;
}

void LossSystem::validate() const
{
    if (!all_finite({rabi, detuning, loss_rate})) throw DomainError("loss system parameters must be finite");
    if (rabi < 0.0) throw DomainError("Rabi frequency must be >= 0");
    if (loss_rate < 0.0) throw DomainError("loss rate must be >= 0");
}

LindbladModel build_loss_model(const LossSystem& sys, LossBookkeeping bookkeeping, EnergyOrigin origin)
{
    sys.validate();
    using namespace loss_basis;
    const int dim = bookkeeping == LossBookkeeping::Sink ? 3 : 2;

    LindbladModel model;
    model.hamiltonian = CMatrix::Zero(dim, dim);
    model.hamiltonian(kGround, kExcited) = 0.5 * sys.rabi;
    model.hamiltonian(kExcited, kGround) = 0.5 * sys.rabi;
    if (origin == EnergyOrigin::Symmetric) {
        model.hamiltonian(kGround, kGround) = 0.5 * sys.detuning;
        model.hamiltonian(kExcited, kExcited) = -0.5 * sys.detuning;
    } else {
        model.hamiltonian(kExcited, kExcited) = -sys.detuning;
    }

    if (sys.loss_rate > 0.0) {
        CMatrix jump = CMatrix::Zero(dim, dim);
        const int target = bookkeeping == LossBookkeeping::Sink ? kLost : kGround;
        jump(target, kExcited) = 1.0;
        model.jumps.push_back({std::move(jump), sys.loss_rate});
    }
    return model;
}

void IntegratorParams::validate() const
{
    if (!std::isfinite(dt) || !std::isfinite(t_final)) throw DomainError("integrator times must be finite");
    if (!(dt > 0.0) || dt > t_final) throw DomainError("integrator requires 0 < dt <= t_final");
    if (stride < 1) throw DomainError("trajectory stride must be >= 1");
}

int IntegratorParams::steps() const
{
    const double n = std::ceil(t_final / dt * (1.0 - 1e-12));
    if (n > static_cast<double>(std::numeric_limits<int>::max())) {
        throw DomainError("too many integration steps");
    }
    return std::max(1, static_cast<int>(n));
}

IntegratorParams default_params(const LossSystem& sys, double t_final)
{
    double dt = std::numeric_limits<double>::infinity();
    if (sys.rabi > 0.0) dt = std::min(dt, 1e-3 * kTwoPi / sys.rabi);
    if (sys.loss_rate > 0.0) dt = std::min(dt, 1e-2 / sys.loss_rate);
    if (sys.detuning != 0.0) dt = std::min(dt, 1e-2 / std::abs(sys.detuning));
    if (!std::isfinite(dt) || dt > t_final) dt = t_final;
    return {dt, t_final, 1};
}

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, const IntegratorParams& params)
{
    model.validate();
    params.validate();
    if (rho0.dim() != model.dim()) throw DomainError("initial state dimension does not match the model");

    const CMatrix h_eff = model.effective_hamiltonian();
    const CMatrix h_eff_adj = h_eff.adjoint();
    std::vector<std::pair<CMatrix, CMatrix>> feeds;  // (sqrt(rate) L, its adjoint)
    for (const auto& jump : model.jumps) {
        if (jump.rate == 0.0) continue;
        CMatrix l = std::sqrt(jump.rate) * jump.op;
        CMatrix ld = l.adjoint();
        feeds.emplace_back(std::move(l), std::move(ld));
    }
    const int d = model.dim();
    CMatrix scratch(d, d);
    auto rhs = [&](const CMatrix& rho, CMatrix& out) {
        out.noalias() = h_eff * rho;
        out.noalias() -= rho * h_eff_adj;
        out *= -kI;
        for (const auto& [l, ld] : feeds) {
            scratch.noalias() = l * rho;
            out.noalias() += scratch * ld;
        }
    };

    const int n = params.steps();
    const double h = params.t_final / n;

    Trajectory traj;
    if (h * model.frequency_scale() > 0.05) {
        traj.warnings.push_back("time step exceeds 0.05 / (fastest rate); accuracy may suffer");
    }
    traj.times.push_back(0.0);
    traj.states.push_back(rho0);

    const double trace0 = rho0.trace();
    CMatrix rho = rho0.matrix();
    CMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);
    for (int step = 1; step <= n; ++step) {
        rhs(rho, k1);
        stage = rho + 0.5 * h * k1;
        rhs(stage, k2);
        stage = rho + 0.5 * h * k2;
        rhs(stage, k3);
        stage = rho + h * k3;
        rhs(stage, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        // Remove the anti-Hermitian part accumulated from round-off.
        stage = rho.adjoint();
        rho = 0.5 * (rho + stage);

        if (std::abs(rho.trace().real() - trace0) > 1e-6) {
            throw DomainError("trace drift exceeds 1e-6; reduce the time step");
        }
        if (step % params.stride == 0 || step == n) {
            traj.times.push_back(step * h);
            traj.states.emplace_back(rho);
        }
    }
    return traj;
}

CVector evolve_no_jump(const CMatrix& effective_hamiltonian, const CVector& psi0, const IntegratorParams& params)
{
    params.validate();
    if (effective_hamiltonian.rows() != psi0.size() || effective_hamiltonian.cols() != psi0.size()) {
        throw DomainError("state dimension does not match the Hamiltonian");
    }
    const CMatrix gen = -kI * effective_hamiltonian;
    const int n = params.steps();
    const double h = params.t_final / n;
    CVector psi = psi0;
    for (int step = 0; step < n; ++step) {
        const CVector k1 = gen * psi;
        const CVector k2 = gen * (psi + 0.5 * h * k1);
        const CVector k3 = gen * (psi + 0.5 * h * k2);
        const CVector k4 = gen * (psi + h * k3);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

SurvivalResult survival_probability(const LossSystem& sys, double t, std::optional<IntegratorParams> params)
{
    sys.validate();
    if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be finite and >= 0");
    if (t == 0.0) return {};
    IntegratorParams p = params.value_or(default_params(sys, t));
    p.t_final = t;
    p.stride = std::numeric_limits<int>::max();

    const LindbladModel model = build_loss_model(sys, LossBookkeeping::Sink);
    const Trajectory traj = evolve(model, DensityMatrix::basis_state(3, loss_basis::kGround), p);

    // No-jump cross-check on the {g, e} block alone.
    const LindbladModel two_level = build_loss_model(sys, LossBookkeeping::Recycling);
    CVector psi0 = CVector::Zero(2);
    psi0(loss_basis::kGround) = 1.0;
    const CVector psi = evolve_no_jump(two_level.effective_hamiltonian(), psi0, p);

    return {1.0 - traj.final_state().population(loss_basis::kLost), psi.squaredNorm()};
}

GammaEff gamma_eff(const LossSystem& sys)
{
    sys.validate();
    GammaEff g;
    const double denom = 4.0 * (sys.detuning * sys.detuning + 0.25 * sys.loss_rate * sys.loss_rate);
    g.rate = denom > 0.0 ? sys.rabi * sys.rabi * sys.loss_rate / denom : 0.0;
    g.perturbative = !(sys.rabi > std::max(std::abs(sys.detuning), sys.loss_rate) / 5.0);
    return g;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, TrajectoryColumns columns,
                          const std::vector<std::string>& state_names)
{
    if (traj.states.empty()) return;
    const int dim = traj.states.front().dim();
    auto name = [&](int k) {
        return k < static_cast<int>(state_names.size()) ? state_names[k] : std::to_string(k);
    };

    out << "t_s";
    if (columns == TrajectoryColumns::Populations) {
        for (int k = 0; k < dim; ++k) out << ",p_" << name(k);
    } else {
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) out << ",re_" << i << '_' << j << ",im_" << i << '_' << j;
        }
    }
    out << '\n';

    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        const CMatrix& rho = traj.states[s].matrix();
        out << format_double(traj.times[s]);
        if (columns == TrajectoryColumns::Populations) {
            for (int k = 0; k < dim; ++k) out << ',' << format_double(rho(k, k).real());
        } else {
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) {
                    out << ',' << format_double(rho(i, j).real()) << ',' << format_double(rho(i, j).imag());
                }
            }
        }
        out << '\n';
    }
}

}  // namespace dresslat
