#include "pmfv/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pmfv/errors.hpp"
#include "pmfv/monotone_graph.hpp"

namespace pmfv {

CellVector SpaceTimeField::slot(int k) const {
  CellVector v;
  v.mesh = mesh;
  v.values.resize(values.cols);
  for (int c = 0; c < values.cols; ++c) v.values[c] = values.at(k, c);
  return v;
}

void SolverConfig::validate() const {
  if (!(q >= 1.0)) throw ConfigError("solver: q must be >= 1");
  if (!(newton_tol > 0.0)) throw ConfigError("solver: newton_tol must be positive");
  if (max_newton_iter < 1) throw ConfigError("solver: max_newton_iter must be >= 1");
}

CellVector discretize_initial(const AdmissibleMesh& mesh,
                              const kernels::PointFn& u0) {
  return project(mesh, u0);
}

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// One nonlinear step: find u with coef_K u_K + sum_L tau_KL (psi(u_K) -
// psi(u_L)) = rhs_K.
class StepProblem {
 public:
  StepProblem(const AdmissibleMesh& mesh, std::vector<double> coef,
              std::vector<double> rhs, double q)
      : mesh_(mesh), coef_(std::move(coef)), rhs_(std::move(rhs)), q_(q) {
    scale_ = inf_norm(coef_);
  }

  double residual(const std::vector<double>& u, std::vector<double>& f) const {
    kernels::power_map(u, q_, power_psi, psi_buf_);
    kernels::tpfa_residual(mesh_, coef_, rhs_, u, psi_buf_, f);
    return inf_norm(f);
  }

  double scale() const { return scale_; }

  std::vector<double> solve(std::vector<double> u, const SolverConfig& cfg,
                            StepStats& stats) const {
    const double target = cfg.newton_tol * scale_;
    if (cfg.method == NonlinearMethod::monotone_sweep)
      return monotone_sweep(std::move(u), cfg, target, stats);

    std::vector<double> f, wp, du, trial, ft;
    double res = residual(u, f);
    double best = res;
    int since_progress = 0;
    int polish_left = cfg.polish_iters;
    bool met = false;
    for (int it = 0; it < cfg.max_newton_iter; ++it) {
      if (res <= target) {
        met = true;
        if (polish_left <= 0 || res == 0.0) break;
      }
      kernels::power_map(u, q_, power_psi_prime, wp);
      BandedMatrix jac(static_cast<int>(mesh_.n_cells()),
                       mesh_.index_bandwidth(), mesh_.index_bandwidth());
      kernels::tpfa_jacobian(mesh_, coef_, wp, jac);
      du = f;
      for (double& x : du) x = -x;
      if (cfg.linear == LinearSolverKind::banded_lu) {
        jac.lu_factor();
        jac.lu_solve(du);
      } else {
        std::vector<double> x;
        if (bicgstab(jac, du, x, 1e-14, 10000) < 0) {
          if (cfg.fallback && !met)
            return monotone_sweep(std::move(u), cfg, target, stats);
          throw SolveError("newton: linear solver breakdown", res / scale_);
        }
        du = x;
      }
      ++stats.newton_iters;
      double lambda = 1.0;
      double res_t = 0.0;
      for (;;) {
        trial = u;
        for (std::size_t i = 0; i < u.size(); ++i) trial[i] += lambda * du[i];
        res_t = residual(trial, ft);
        if (!cfg.damping || res_t < res || lambda < 1e-9) break;
        lambda *= 0.5;
      }
      if (met) {
        // polishing: keep only strictly improving full steps
        if (res_t < res) {
          u.swap(trial);
          f.swap(ft);
          res = res_t;
          --polish_left;
          continue;
        }
        break;
      }
      if (res_t >= res && lambda < 1e-9) {
        // stalled line search
        if (cfg.fallback)
          return monotone_sweep(std::move(u), cfg, target, stats);
        throw SolveError("newton: stalled line search", res / scale_);
      }
      u.swap(trial);
      f.swap(ft);
      res = res_t;
      double step = lambda * inf_norm(du);
      if (res <= target && step <= std::sqrt(cfg.newton_tol) * (1.0 + inf_norm(u)))
        met = true;
      if (res < 0.5 * best) {
        best = res;
        since_progress = 0;
      } else if (++since_progress > 8 && !met) {
        if (cfg.fallback)
          return monotone_sweep(std::move(u), cfg, target, stats);
        throw SolveError("newton: no progress", res / scale_);
      }
    }
    if (!met && res > target) {
      if (cfg.fallback) return monotone_sweep(std::move(u), cfg, target, stats);
      throw SolveError("newton: iteration budget exhausted", res / scale_);
    }
    stats.residual = res / scale_;
    return u;
  }

 private:
  // Nonlinear Gauss-Seidel: every cell solves its scalar monotone equation
  // through the power-law resolvent; globally convergent for this M-function
  // structure.
  std::vector<double> monotone_sweep(std::vector<double> u,
                                     const SolverConfig& cfg, double target,
                                     StepStats& stats) const {
    stats.used_fallback = cfg.method != NonlinearMethod::monotone_sweep;
    PowerLaw graph(q_);
    const auto& off = mesh_.adj_offsets();
    const auto& nbr = mesh_.adj_cells();
    const auto& tau = mesh_.adj_taus();
    std::vector<double> f;
    double res = residual(u, f);
    for (int sweep = 0; sweep < cfg.max_sweeps && res > target; ++sweep) {
      for (std::size_t k = 0; k < u.size(); ++k) {
        double s_tau = 0.0, flux_in = 0.0;
        for (int a = off[k]; a < off[k + 1]; ++a) {
          s_tau += tau[a];
          flux_in += tau[a] * power_psi(u[nbr[a]], q_);
        }
        double y = rhs_[k] + flux_in;
        if (s_tau == 0.0) {
          u[k] = y / coef_[k];
        } else {
          u[k] = graph.resolvent(s_tau / coef_[k], y / coef_[k]);
        }
      }
      ++stats.sweeps;
      res = residual(u, f);
    }
    if (res > target)
      throw SolveError("monotone sweep: iteration budget exhausted",
                       res / scale_);
    stats.residual = res / scale_;
    return u;
  }

  const AdmissibleMesh& mesh_;
  std::vector<double> coef_, rhs_;
  double q_;
  double scale_ = 1.0;
  mutable std::vector<double> psi_buf_;
};

std::vector<double> cell_measures(const AdmissibleMesh& mesh) {
  std::vector<double> m(mesh.n_cells());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = mesh.cells[k].measure;
  return m;
}

}  // namespace

CellVector step_euler(const CellVector& u_prev, double dt,
                      const SolverConfig& config, StepStats* stats) {
  if (!(dt > 0.0)) throw Error("step_euler: dt must be positive");
  const AdmissibleMesh& mesh = *u_prev.mesh;
  const std::size_t nc = mesh.n_cells();
  std::vector<double> coef(nc), rhs(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    double m_dt = mesh.cells[k].measure / dt;
    coef[k] = m_dt;
    rhs[k] = m_dt * u_prev.values[k];
  }
  StepProblem prob(mesh, std::move(coef), std::move(rhs), config.q);
  StepStats local;
  auto u = prob.solve(u_prev.values, config, local);
  if (stats) *stats = local;
  return CellVector(mesh, std::move(u));
}

CellVector step_bdf2(const CellVector& u_km1, const CellVector& u_km2,
                     double dt, const SolverConfig& config, StepStats* stats) {
  if (!(dt > 0.0)) throw Error("step_bdf2: dt must be positive");
  const AdmissibleMesh& mesh = *u_km1.mesh;
  const std::size_t nc = mesh.n_cells();
  std::vector<double> coef(nc), rhs(nc), guess(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    double m_dt = mesh.cells[k].measure / dt;
    coef[k] = 1.5 * m_dt;
    rhs[k] = m_dt * (2.0 * u_km1.values[k] - 0.5 * u_km2.values[k]);
    guess[k] = 2.0 * u_km1.values[k] - u_km2.values[k];
  }
  StepProblem prob(mesh, std::move(coef), std::move(rhs), config.q);
  StepStats local;
  auto u = prob.solve(std::move(guess), config, local);
  if (stats) *stats = local;
  return CellVector(mesh, std::move(u));
}

RunResult run(const AdmissibleMesh& mesh, const TimeGrid& grid,
              const SolverConfig& config, const kernels::PointFn& u0,
              std::optional<double> u0_l2sq) {
  config.validate();
  grid.validate();
  if (!grid.is_uniform())
    throw StructuralError("run: the scheme needs a uniform time grid");
  auto t_start = std::chrono::steady_clock::now();

  const int n = grid.steps();
  const int nc = static_cast<int>(mesh.n_cells());
  const auto measures = cell_measures(mesh);

  RunResult out;
  out.field.mesh = &mesh;
  out.field.grid = grid;
  out.field.values = SlotMatrix(n + 1, nc);

  CellVector u = discretize_initial(mesh, u0);
  for (int c = 0; c < nc; ++c) out.field.values.at(0, c) = u.values[c];

  RunReport& rep = out.report;
  if (u0_l2sq) {
    rep.u0_l2sq = *u0_l2sq;
  } else {
    std::vector<double> zero(nc, 0.0);
    rep.u0_l2sq = kernels::quad_error_sq(mesh, zero, u0);
  }
  rep.mass0 = kernels::cell_weighted_dot(
      measures, u.values, std::vector<double>(nc, 1.0));
  std::vector<double> abs_u0(nc);
  for (int c = 0; c < nc; ++c) abs_u0[c] = std::abs(u.values[c]);
  rep.mass_scale = kernels::cell_weighted_dot(measures, abs_u0,
                                              std::vector<double>(nc, 1.0));
  rep.mass_tol = 1e-10 * rep.mass_scale;
  rep.energy_bound = 2.0 * rep.u0_l2sq;
  rep.energy_slack_tol = 1e-8 * rep.u0_l2sq;
  rep.min_energy_slack = rep.energy_bound;

  const double dt = grid.dt(1);
  double dissipation = 0.0, flux_l1 = 0.0, phi_l2 = 0.0, u_lqp1 = 0.0;
  const std::vector<double> ones(nc, 1.0);

  CellVector u_prev = u;
  std::vector<double> phi_vals, psi_vals;
  for (int k = 1; k <= n; ++k) {
    StepStats stats;
    CellVector u_next =
        k == 1 ? step_euler(u, dt, config, &stats)
               : step_bdf2(u, u_prev, dt, config, &stats);
    u_prev = std::move(u);
    u = std::move(u_next);
    for (int c = 0; c < nc; ++c) out.field.values.at(k, c) = u.values[c];

    kernels::power_map(u.values, config.q, power_phi, phi_vals);
    kernels::power_map(u.values, config.q, power_psi, psi_vals);
    dissipation += dt * kernels::iface_tau_diff_sumsq(mesh, phi_vals);
    flux_l1 += dt * kernels::iface_measure_absdiff(mesh, psi_vals);
    phi_l2 += dt * kernels::cell_weighted_sumsq(measures, phi_vals);
    u_lqp1 += dt * kernels::cell_weighted_abs_pow(measures, u.values,
                                                  config.q + 1.0);

    StepRecord rec;
    rec.k = k;
    rec.time = grid.times[k];
    rec.mass = kernels::cell_weighted_dot(measures, u.values, ones);
    rec.dissipation = dissipation;
    rec.energy =
        0.25 * kernels::cell_weighted_sumsq(measures, u.values) + dissipation;
    rec.flux_l1 = flux_l1;
    rec.phi_l2_qt = phi_l2;
    rec.u_lqp1_qt = u_lqp1;
    rec.stats = stats;
    rec.mass_ok = std::abs(rec.mass - rep.mass0) <= rep.mass_tol;
    rec.energy_ok =
        rep.energy_bound - rec.energy >= -rep.energy_slack_tol;
    rep.max_mass_drift =
        std::max(rep.max_mass_drift, std::abs(rec.mass - rep.mass0));
    rep.min_energy_slack =
        std::min(rep.min_energy_slack, rep.energy_bound - rec.energy);
    if (!rec.mass_ok || !rec.energy_ok) rep.estimates_ok = false;
    rep.steps.push_back(rec);
  }
  rep.flux_l1_total = flux_l1;
  rep.phi_l2_qt = std::sqrt(phi_l2);
  rep.u_lqp1_qt = std::pow(u_lqp1, 1.0 / (config.q + 1.0));
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return out;
}

std::vector<EnergyRecord> energy_functionals(const SpaceTimeField& field,
                                             double q) {
  const AdmissibleMesh& mesh = *field.mesh;
  const int n = field.grid.steps();
  const int nc = static_cast<int>(mesh.n_cells());
  const auto measures = cell_measures(mesh);
  const double dt = field.grid.dt(1);

  auto slot_vals = [&](int k) {
    std::vector<double> v(nc);
    for (int c = 0; c < nc; ++c) v[c] = field.values.at(k, c);
    return v;
  };
  auto msumsq = [&](const std::vector<double>& v) {
    return kernels::cell_weighted_sumsq(measures, v);
  };

  std::vector<double> phi_vals;
  std::vector<EnergyRecord> out;
  const auto u0 = slot_vals(0);
  std::vector<double> u_prev = u0, u_cur;
  double dissipation_from_1 = 0.0, dissipation_from_2 = 0.0;
  double ledger_rhs = 0.0;
  for (int ell = 1; ell <= n; ++ell) {
    u_cur = slot_vals(ell);
    kernels::power_map(u_cur, q, power_phi, phi_vals);
    double step_dissip = dt * kernels::iface_tau_diff_sumsq(mesh, phi_vals);
    dissipation_from_1 += step_dissip;
    if (ell >= 2) dissipation_from_2 += step_dissip;

    EnergyRecord rec;
    rec.ell = ell;
    if (ell == 1) {
      rec.lhs = 0.5 * msumsq(u_cur) + step_dissip;
      rec.rhs = 0.5 * msumsq(u0);
      std::vector<double> two_a_b(nc);
      for (int c = 0; c < nc; ++c) two_a_b[c] = 2.0 * u_cur[c] - u0[c];
      ledger_rhs = 0.25 * (msumsq(u_cur) + msumsq(two_a_b));
    } else {
      std::vector<double> two_a_b(nc);
      for (int c = 0; c < nc; ++c) two_a_b[c] = 2.0 * u_cur[c] - u_prev[c];
      rec.lhs = 0.25 * (msumsq(u_cur) + msumsq(two_a_b)) + dissipation_from_2;
      rec.rhs = ledger_rhs;
    }
    rec.energy = 0.25 * msumsq(u_cur) + dissipation_from_1;
    out.push_back(rec);
    u_prev = u_cur;
  }
  return out;
}

double flux_l1_norm(const SpaceTimeField& field, double q) {
  const AdmissibleMesh& mesh = *field.mesh;
  const int n = field.grid.steps();
  const int nc = static_cast<int>(mesh.n_cells());
  std::vector<double> slot(nc), psi_vals;
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    for (int c = 0; c < nc; ++c) slot[c] = field.values.at(k, c);
    kernels::power_map(slot, q, power_psi, psi_vals);
    acc += field.grid.dt(k) * kernels::iface_measure_absdiff(mesh, psi_vals);
  }
  return acc;
}

SlotMatrix project_test_function(const AdmissibleMesh& mesh,
                                 const TimeGrid& grid, const SpaceTimeFn& phi) {
  const int n = grid.steps();
  const int nc = static_cast<int>(mesh.n_cells());
  SlotMatrix out(n + 1, nc);
  std::vector<double> avg;
  for (int k = 0; k <= n; ++k) {
    double t = k == 0 ? 0.0 : grid.times[k - 1];
    kernels::cell_averages(
        mesh, [&](double x, double y) { return phi(x, y, t); }, avg);
    for (int c = 0; c < nc; ++c) out.at(k, c) = avg[c];
  }
  return out;
}

double dual_pairing(const SpaceTimeField& field, const SlotMatrix& p_phi) {
  const AdmissibleMesh& mesh = *field.mesh;
  MultistepOperator op = build_bdf2_uniform(field.grid);
  SlotMatrix delta = op.apply_delta(field.values);
  WeightField one = WeightField::constant(mesh, 1.0);
  return spacetime_pairing(mesh, field.grid, one, delta, p_phi);
}

double slot_grad_linf(const AdmissibleMesh& mesh, const SlotMatrix& slots) {
  const int nc = static_cast<int>(mesh.n_cells());
  std::vector<double> v(nc);
  double m = 0.0;
  for (int k = 1; k < slots.rows; ++k) {
    for (int c = 0; c < nc; ++c) v[c] = slots.at(k, c);
    m = std::max(m, kernels::iface_grad_linf(mesh, v));
  }
  return m;
}

WeakFormTerms weak_form_residual(const SpaceTimeField& field, double q,
                                 const SpaceTimeFn& phi) {
  const AdmissibleMesh& mesh = *field.mesh;
  const TimeGrid& grid = field.grid;
  const int n = grid.steps();
  const int nc = static_cast<int>(mesh.n_cells());

  MultistepOperator op = build_bdf2_uniform(grid);
  SlotMatrix p_phi = project_test_function(mesh, grid, phi);
  SlotMatrix phi_hat = op.transform_test_vector(p_phi);
  SlotMatrix delta = op.apply_delta(field.values);

  WeightField one = WeightField::constant(mesh, 1.0);
  WeakFormTerms terms;
  terms.a = spacetime_pairing(mesh, grid, one, delta, phi_hat);

  std::vector<double> slot(nc), psi_vals, pk(nc), dk(nc);
  for (int k = 1; k <= n; ++k) {
    for (int c = 0; c < nc; ++c) {
      slot[c] = field.values.at(k, c);
      pk[c] = p_phi.at(k, c);
      dk[c] = phi_hat.at(k, c) - p_phi.at(k, c);
    }
    kernels::power_map(slot, q, power_psi, psi_vals);
    terms.b += grid.dt(k) * kernels::iface_tau_diff_dot(mesh, psi_vals, pk);
    terms.c += grid.dt(k) * kernels::iface_tau_diff_dot(mesh, psi_vals, dk);
  }
  terms.total = terms.a + terms.b + terms.c;
  return terms;
}

}  // namespace pmfv
