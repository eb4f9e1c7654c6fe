#pragma once

// Fully discrete scheme for du/dt = Laplacian(psi(u)) with zero-flux
// boundary: cell-average initial data, one implicit Euler bootstrap step,
// then uniform-step BDF2, each step solved by damped Newton with a monotone
// Gauss-Seidel fallback. Every run carries the per-step monitors (mass,
// energy ledger, flux L1 accumulators) that the a-priori estimates bound.

#include <optional>
#include <vector>

#include "pmfv/discrete_ops.hpp"
#include "pmfv/mesh.hpp"
#include "pmfv/time_algebra.hpp"

namespace pmfv {

struct SpaceTimeField {
  const AdmissibleMesh* mesh = nullptr;
  TimeGrid grid;
  SlotMatrix values;  // (n+1) slots x n_cells

  CellVector slot(int k) const;
};

enum class NonlinearMethod { newton, monotone_sweep };
enum class LinearSolverKind { banded_lu, bicgstab };

struct SolverConfig {
  double q = 2.0;             // nonlinearity exponent, 1 = linear mode
  double newton_tol = 1e-11;  // residual inf-norm target, scaled by max m_K/dt
  int max_newton_iter = 50;
  bool damping = true;      // half the step while the residual grows
  int polish_iters = 4;     // extra iterations while the residual keeps falling
  NonlinearMethod method = NonlinearMethod::newton;
  bool fallback = true;     // monotone sweep when Newton stalls
  LinearSolverKind linear = LinearSolverKind::banded_lu;
  int max_sweeps = 200000;  // monotone Gauss-Seidel budget

  void validate() const;
};

struct StepStats {
  int newton_iters = 0;
  int sweeps = 0;
  double residual = 0.0;  // scaled, at acceptance
  bool used_fallback = false;
};

struct StepRecord {
  int k = 0;
  double time = 0.0;
  double mass = 0.0;         // sum m_K u_K^k
  double dissipation = 0.0;  // sum_{j<=k} dt sum tau (phi_K - phi_L)^2
  double energy = 0.0;       // m-weighted quarter square + dissipation
  double flux_l1 = 0.0;      // sum_{j<=k} dt sum m_KL |psi_K - psi_L|
  double phi_l2_qt = 0.0;    // running ||pi phi(u)||_{L2}^2 over the slabs
  double u_lqp1_qt = 0.0;    // running ||pi u||^{q+1} integral
  bool mass_ok = true;
  bool energy_ok = true;
  StepStats stats;
};

struct RunReport {
  std::vector<StepRecord> steps;
  double u0_l2sq = 0.0;       // continuous ||u0||_{L2}^2
  double mass0 = 0.0;
  double mass_scale = 0.0;    // sum m_K |u_K^0|
  double mass_tol = 0.0;      // 1e-10 * mass_scale
  double energy_bound = 0.0;  // 2 ||u0||^2
  double energy_slack_tol = 0.0;  // 1e-8 * ||u0||^2
  double max_mass_drift = 0.0;
  double min_energy_slack = 0.0;
  double flux_l1_total = 0.0;
  double phi_l2_qt = 0.0;   // final L2(Q_T) norm of pi phi(u)
  double u_lqp1_qt = 0.0;   // final L^{q+1}(Q_T) norm of pi u
  double wall_seconds = 0.0;
  bool estimates_ok = true;
};

struct RunResult {
  SpaceTimeField field;
  RunReport report;
};

// Cell averages of the initial profile (same quadrature as project).
CellVector discretize_initial(const AdmissibleMesh& mesh,
                              const kernels::PointFn& u0);

// One implicit Euler step from u_prev over dt. Throws SolveError on
// divergence after the fallback budget.
CellVector step_euler(const CellVector& u_prev, double dt,
                      const SolverConfig& config, StepStats* stats = nullptr);

// One uniform-step BDF2 step from the two previous slots.
CellVector step_bdf2(const CellVector& u_km1, const CellVector& u_km2,
                     double dt, const SolverConfig& config,
                     StepStats* stats = nullptr);

// Full trajectory with monitors. `u0_l2sq` overrides the quadrature value of
// the continuous initial norm when a closed form is available.
RunResult run(const AdmissibleMesh& mesh, const TimeGrid& grid,
              const SolverConfig& config, const kernels::PointFn& u0,
              std::optional<double> u0_l2sq = std::nullopt);

// Per-step energy identities: the Euler-step inequality at ell = 1, the
// BDF2 ledger for ell >= 2, and the telescoped bound for every ell.
struct EnergyRecord {
  int ell = 0;
  double lhs = 0.0;     // step inequality left side (Euler at 1, ledger at >=2)
  double rhs = 0.0;     // matching right side
  double energy = 0.0;  // quarter square + total dissipation up to ell
};
std::vector<EnergyRecord> energy_functionals(const SpaceTimeField& field,
                                             double q);

// L1(Q_T) norm of the discrete gradient of psi(u).
double flux_l1_norm(const SpaceTimeField& field, double q);

// Weak-form split A + B + C = 0: the dual pairing against the transformed
// test vector, the transmissibility bilinear term against the projected test
// function, and the commutator carrying their difference. `total` measures
// the accumulated nonlinear-solve residual.
struct WeakFormTerms {
  double a = 0.0, b = 0.0, c = 0.0, total = 0.0;
};
using SpaceTimeFn = std::function<double(double, double, double)>;  // (x,y,t)
WeakFormTerms weak_form_residual(const SpaceTimeField& field, double q,
                                 const SpaceTimeFn& phi);

// Projection of a space-time test function: slot k holds the cell averages
// of phi(., t_{k-1}) (slot 0 uses t = 0).
SlotMatrix project_test_function(const AdmissibleMesh& mesh,
                                 const TimeGrid& grid, const SpaceTimeFn& phi);

// Pairing of the multistep derivative against a projected test function,
// integral over the cylinder of delta-hat(u) * pi(P phi).
double dual_pairing(const SpaceTimeField& field, const SlotMatrix& p_phi);

// Max over slots 1..n of the reconstructed-gradient sup norm of a slot table.
double slot_grad_linf(const AdmissibleMesh& mesh, const SlotMatrix& slots);

}  // namespace pmfv
