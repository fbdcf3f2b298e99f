#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dresslat {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Square, Hermitian, dim >= 2. Trace and positivity are checked by callers
/// that need them; construction only enforces shape and Hermiticity.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix rho);

    static DensityMatrix pure(const CVector& psi);
    static DensityMatrix basis_state(int dim, int k);

    const CMatrix& matrix() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }
    double trace() const { return rho_.trace().real(); }
    double population(int k) const { return rho_(k, k).real(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;

private:
    CMatrix rho_;
};

struct JumpOperator {
    CMatrix op;
    double rate = 0.0;
};

/// d rho/dt = -i[H, rho] + sum_k rate_k (L rho L^+ - {L^+ L, rho}/2), H in rad/s.
struct LindbladModel {
    CMatrix hamiltonian;
    std::vector<JumpOperator> jumps;

    int dim() const { return static_cast<int>(hamiltonian.rows()); }
    void validate() const;

    /// H - (i/2) sum_k rate_k L^+ L, the generator of no-jump evolution.
    CMatrix effective_hamiltonian() const;

    /// Rough upper bound on the fastest rate in the generator.
    double frequency_scale() const;
};

/// Driven two-level system with a lossy excited state.
struct LossSystem {
    double rabi = 0.0;       // Omega
    double detuning = 0.0;   // Delta
    double loss_rate = 0.0;  // Gamma

    void validate() const;
};

namespace loss_basis {
inline constexpr int kGround = 0;
inline constexpr int kExcited = 1;
inline constexpr int kLost = 2;
}  // namespace loss_basis

enum class LossBookkeeping {
    Sink,       // decay goes to an explicit |lost> state (dim 3)
    Recycling,  // literal sigma^- jump back into |g> (dim 2)
};

enum class EnergyOrigin {
    Symmetric,  // H = (Omega/2) sigma_x - (Delta/2) sigma_z
    Ground,     // same up to a constant: |g> at zero energy, |e> at -Delta
};

LindbladModel build_loss_model(const LossSystem& sys, LossBookkeeping bookkeeping = LossBookkeeping::Sink,
                               EnergyOrigin origin = EnergyOrigin::Symmetric);

/// Fixed-step classical RK4. The step actually taken is t_final / ceil(t_final / dt).
struct IntegratorParams {
    double dt = 0.0;
    double t_final = 0.0;
    int stride = 1;  // record every `stride` steps (first and last state always kept)

    void validate() const;
    int steps() const;
};

/// dt = min(1e-3 * 2pi/Omega, 1e-2/Gamma, 1e-2/|Delta|) over the nonzero scales.
IntegratorParams default_params(const LossSystem& sys, double t_final);

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<std::string> warnings;

    const DensityMatrix& final_state() const { return states.back(); }
};

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, const IntegratorParams& params);

/// RK4 propagation of psi under a (generally non-Hermitian) effective Hamiltonian.
CVector evolve_no_jump(const CMatrix& effective_hamiltonian, const CVector& psi0,
                       const IntegratorParams& params);

struct SurvivalResult {
    double survival = 1.0;        // 1 - P_lost from the sink model
    double no_jump_norm_sq = 1.0;  // |psi(t)|^2 under no-jump propagation
};

/// Probability that no loss event has happened by time t, starting in |g>.
SurvivalResult survival_probability(const LossSystem& sys, double t,
                                    std::optional<IntegratorParams> params = std::nullopt);

struct GammaEff {
    double rate = 0.0;
    bool perturbative = true;  // false when Omega > max(|Delta|, Gamma) / 5
};

/// Omega^2 Gamma / (4 (Delta^2 + Gamma^2 / 4)).
GammaEff gamma_eff(const LossSystem& sys);

enum class TrajectoryColumns { Populations, Full };

/// One header line, then one row per recorded time. Populations mode writes
/// t_s,p_<name>...; Full mode writes t_s,re_i_j,im_i_j,... in row-major order.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, TrajectoryColumns columns,
                          const std::vector<std::string>& state_names = {});

}  // namespace dresslat
