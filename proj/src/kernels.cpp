#include "pmfv/kernels.hpp"

#include <atomic>
#include <cmath>

#include "pmfv/errors.hpp"
#include "pmfv/quadrature.hpp"

namespace pmfv::kernels {

namespace {
std::atomic<Exec> g_mode{Exec::parallel};

double s_accumulate(const std::vector<double>& buf) {
  double acc = 0.0;
  for (double x : buf) acc += x;
  return acc;
}
}  // namespace

Exec exec_mode() { return g_mode.load(std::memory_order_relaxed); }
void set_exec_mode(Exec mode) { g_mode.store(mode, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// serial reference
// ---------------------------------------------------------------------------

namespace serial {

void power_map(const std::vector<double>& u, double q,
               double (*fn)(double, double), std::vector<double>& out) {
  out.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = fn(u[i], q);
}

void tpfa_residual(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& rhs, const std::vector<double>& u,
                   const std::vector<double>& w, std::vector<double>& out) {
  const auto& off = mesh.adj_offsets();
  const auto& nbr = mesh.adj_cells();
  const auto& tau = mesh.adj_taus();
  const std::size_t nc = mesh.n_cells();
  out.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    double f = coef[k] * u[k] - rhs[k];
    for (int a = off[k]; a < off[k + 1]; ++a)
      f += tau[a] * (w[k] - w[nbr[a]]);
    out[k] = f;
  }
}

void tpfa_jacobian(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& wprime, BandedMatrix& out) {
  const auto& off = mesh.adj_offsets();
  const auto& nbr = mesh.adj_cells();
  const auto& tau = mesh.adj_taus();
  out.clear();
  const int nc = static_cast<int>(mesh.n_cells());
  for (int k = 0; k < nc; ++k) {
    double diag = coef[k];
    for (int a = off[k]; a < off[k + 1]; ++a) {
      diag += tau[a] * wprime[k];
      out.at(k, nbr[a]) = -tau[a] * wprime[nbr[a]];
    }
    out.at(k, k) = diag;
  }
}

double cell_weighted_sumsq(const std::vector<double>& weights,
                           const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += weights[i] * v[i] * v[i];
  return acc;
}

double cell_weighted_dot(const std::vector<double>& weights,
                         const std::vector<double>& u,
                         const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += weights[i] * u[i] * v[i];
  return acc;
}

double cell_weighted_abs_pow(const std::vector<double>& weights,
                             const std::vector<double>& v, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    acc += weights[i] * std::pow(std::abs(v[i]), p);
  return acc;
}

double iface_tau_diff_sumsq(const AdmissibleMesh& mesh,
                            const std::vector<double>& w) {
  double acc = 0.0;
  for (const auto& f : mesh.interfaces) {
    double d = w[f.k] - w[f.l];
    acc += f.tau * d * d;
  }
  return acc;
}

double iface_tau_diff_dot(const AdmissibleMesh& mesh,
                          const std::vector<double>& w,
                          const std::vector<double>& g) {
  double acc = 0.0;
  for (const auto& f : mesh.interfaces)
    acc += f.tau * (w[f.k] - w[f.l]) * (g[f.k] - g[f.l]);
  return acc;
}

double iface_measure_absdiff(const AdmissibleMesh& mesh,
                             const std::vector<double>& w) {
  double acc = 0.0;
  for (const auto& f : mesh.interfaces)
    acc += f.measure * std::abs(w[f.k] - w[f.l]);
  return acc;
}

double iface_grad_pow(const AdmissibleMesh& mesh, const std::vector<double>& w,
                      double p) {
  const double d = mesh.dim;
  double acc = 0.0;
  for (std::size_t i = 0; i < mesh.n_interfaces(); ++i) {
    const auto& f = mesh.interfaces[i];
    double g = d * std::abs(w[f.k] - w[f.l]) / f.distance;
    acc += mesh.diamond_measure(i) * std::pow(g, p);
  }
  return acc;
}

double iface_grad_linf(const AdmissibleMesh& mesh,
                       const std::vector<double>& w) {
  const double d = mesh.dim;
  double m = 0.0;
  for (const auto& f : mesh.interfaces)
    m = std::max(m, d * std::abs(w[f.k] - w[f.l]) / f.distance);
  return m;
}

void cell_averages(const AdmissibleMesh& mesh, const PointFn& f,
                   std::vector<double>& out) {
  const std::size_t nc = mesh.n_cells();
  out.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    if (!mesh.cells[k].box)
      throw Error("cell_averages: mesh has no cell extents");
    out[k] = box_average(*mesh.cells[k].box, mesh.dim, f);
  }
}

double quad_error_sq(const AdmissibleMesh& mesh, const std::vector<double>& v,
                     const PointFn& f) {
  double acc = 0.0;
  for (std::size_t k = 0; k < mesh.n_cells(); ++k) {
    if (!mesh.cells[k].box) throw Error("quad_error_sq: mesh has no cell extents");
    double vk = v[k];
    acc += integrate_box(*mesh.cells[k].box, mesh.dim,
                         [&](double x, double y) {
                           double e = vk - f(x, y);
                           return e * e;
                         });
  }
  return acc;
}

double quad_error_abs(const AdmissibleMesh& mesh, const std::vector<double>& v,
                      const PointFn& f) {
  double acc = 0.0;
  for (std::size_t k = 0; k < mesh.n_cells(); ++k) {
    if (!mesh.cells[k].box) throw Error("quad_error_abs: mesh has no cell extents");
    double vk = v[k];
    acc += integrate_box(*mesh.cells[k].box, mesh.dim, [&](double x, double y) {
      return std::abs(vk - f(x, y));
    });
  }
  return acc;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP kernels; reductions buffer per-entity terms and accumulate serially
// in index order, matching the reference bit for bit.
// ---------------------------------------------------------------------------

namespace par {

void power_map(const std::vector<double>& u, double q,
               double (*fn)(double, double), std::vector<double>& out) {
  out.resize(u.size());
  const std::int64_t n = static_cast<std::int64_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = fn(u[i], q);
}

void tpfa_residual(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& rhs, const std::vector<double>& u,
                   const std::vector<double>& w, std::vector<double>& out) {
  const auto& off = mesh.adj_offsets();
  const auto& nbr = mesh.adj_cells();
  const auto& tau = mesh.adj_taus();
  const std::int64_t nc = static_cast<std::int64_t>(mesh.n_cells());
  out.resize(nc);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < nc; ++k) {
    double f = coef[k] * u[k] - rhs[k];
    for (int a = off[k]; a < off[k + 1]; ++a)
      f += tau[a] * (w[k] - w[nbr[a]]);
    out[k] = f;
  }
}

void tpfa_jacobian(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& wprime, BandedMatrix& out) {
  const auto& off = mesh.adj_offsets();
  const auto& nbr = mesh.adj_cells();
  const auto& tau = mesh.adj_taus();
  out.clear();
  const std::int64_t nc = static_cast<std::int64_t>(mesh.n_cells());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < nc; ++k) {
    double diag = coef[k];
    for (int a = off[k]; a < off[k + 1]; ++a) {
      diag += tau[a] * wprime[k];
      out.at(static_cast<int>(k), nbr[a]) = -tau[a] * wprime[nbr[a]];
    }
    out.at(static_cast<int>(k), static_cast<int>(k)) = diag;
  }
}

double cell_weighted_sumsq(const std::vector<double>& weights,
                           const std::vector<double>& v) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) buf[i] = weights[i] * v[i] * v[i];
  return s_accumulate(buf);
}

double cell_weighted_dot(const std::vector<double>& weights,
                         const std::vector<double>& u,
                         const std::vector<double>& v) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) buf[i] = weights[i] * u[i] * v[i];
  return s_accumulate(buf);
}

double cell_weighted_abs_pow(const std::vector<double>& weights,
                             const std::vector<double>& v, double p) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    buf[i] = weights[i] * std::pow(std::abs(v[i]), p);
  return s_accumulate(buf);
}

double iface_tau_diff_sumsq(const AdmissibleMesh& mesh,
                            const std::vector<double>& w) {
  const std::int64_t n = static_cast<std::int64_t>(mesh.n_interfaces());
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& f = mesh.interfaces[i];
    double d = w[f.k] - w[f.l];
    buf[i] = f.tau * d * d;
  }
  return s_accumulate(buf);
}

double iface_tau_diff_dot(const AdmissibleMesh& mesh,
                          const std::vector<double>& w,
                          const std::vector<double>& g) {
  const std::int64_t n = static_cast<std::int64_t>(mesh.n_interfaces());
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& f = mesh.interfaces[i];
    buf[i] = f.tau * (w[f.k] - w[f.l]) * (g[f.k] - g[f.l]);
  }
  return s_accumulate(buf);
}

double iface_measure_absdiff(const AdmissibleMesh& mesh,
                             const std::vector<double>& w) {
  const std::int64_t n = static_cast<std::int64_t>(mesh.n_interfaces());
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& f = mesh.interfaces[i];
    buf[i] = f.measure * std::abs(w[f.k] - w[f.l]);
  }
  return s_accumulate(buf);
}

double iface_grad_pow(const AdmissibleMesh& mesh, const std::vector<double>& w,
                      double p) {
  const double d = mesh.dim;
  const std::int64_t n = static_cast<std::int64_t>(mesh.n_interfaces());
  std::vector<double> buf(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& f = mesh.interfaces[i];
    double g = d * std::abs(w[f.k] - w[f.l]) / f.distance;
    buf[i] = mesh.diamond_measure(i) * std::pow(g, p);
  }
  return s_accumulate(buf);
}

double iface_grad_linf(const AdmissibleMesh& mesh,
                       const std::vector<double>& w) {
  const double d = mesh.dim;
  const std::int64_t n = static_cast<std::int64_t>(mesh.n_interfaces());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& f = mesh.interfaces[i];
    m = std::max(m, d * std::abs(w[f.k] - w[f.l]) / f.distance);
  }
  return m;
}

void cell_averages(const AdmissibleMesh& mesh, const PointFn& f,
                   std::vector<double>& out) {
  const std::int64_t nc = static_cast<std::int64_t>(mesh.n_cells());
  out.resize(nc);
  for (std::int64_t k = 0; k < nc; ++k)
    if (!mesh.cells[k].box)
      throw Error("cell_averages: mesh has no cell extents");
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < nc; ++k)
    out[k] = box_average(*mesh.cells[k].box, mesh.dim, f);
}

double quad_error_sq(const AdmissibleMesh& mesh, const std::vector<double>& v,
                     const PointFn& f) {
  const std::int64_t nc = static_cast<std::int64_t>(mesh.n_cells());
  for (std::int64_t k = 0; k < nc; ++k)
    if (!mesh.cells[k].box) throw Error("quad_error_sq: mesh has no cell extents");
  std::vector<double> buf(nc);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < nc; ++k) {
    double vk = v[k];
    buf[k] = integrate_box(*mesh.cells[k].box, mesh.dim,
                           [&](double x, double y) {
                             double e = vk - f(x, y);
                             return e * e;
                           });
  }
  return s_accumulate(buf);
}

double quad_error_abs(const AdmissibleMesh& mesh, const std::vector<double>& v,
                      const PointFn& f) {
  const std::int64_t nc = static_cast<std::int64_t>(mesh.n_cells());
  for (std::int64_t k = 0; k < nc; ++k)
    if (!mesh.cells[k].box) throw Error("quad_error_abs: mesh has no cell extents");
  std::vector<double> buf(nc);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < nc; ++k) {
    double vk = v[k];
    buf[k] = integrate_box(*mesh.cells[k].box, mesh.dim, [&](double x, double y) {
      return std::abs(vk - f(x, y));
    });
  }
  return s_accumulate(buf);
}

}  // namespace par

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

#define PMFV_DISPATCH(call) \
  return exec_mode() == Exec::parallel ? par::call : serial::call

void power_map(const std::vector<double>& u, double q,
               double (*fn)(double, double), std::vector<double>& out) {
  PMFV_DISPATCH(power_map(u, q, fn, out));
}
void tpfa_residual(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& rhs, const std::vector<double>& u,
                   const std::vector<double>& w, std::vector<double>& out) {
  PMFV_DISPATCH(tpfa_residual(mesh, coef, rhs, u, w, out));
}
void tpfa_jacobian(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& wprime, BandedMatrix& out) {
  PMFV_DISPATCH(tpfa_jacobian(mesh, coef, wprime, out));
}
double cell_weighted_sumsq(const std::vector<double>& weights,
                           const std::vector<double>& v) {
  PMFV_DISPATCH(cell_weighted_sumsq(weights, v));
}
double cell_weighted_dot(const std::vector<double>& weights,
                         const std::vector<double>& u,
                         const std::vector<double>& v) {
  PMFV_DISPATCH(cell_weighted_dot(weights, u, v));
}
double cell_weighted_abs_pow(const std::vector<double>& weights,
                             const std::vector<double>& v, double p) {
  PMFV_DISPATCH(cell_weighted_abs_pow(weights, v, p));
}
double iface_tau_diff_sumsq(const AdmissibleMesh& mesh,
                            const std::vector<double>& w) {
  PMFV_DISPATCH(iface_tau_diff_sumsq(mesh, w));
}
double iface_tau_diff_dot(const AdmissibleMesh& mesh,
                          const std::vector<double>& w,
                          const std::vector<double>& g) {
  PMFV_DISPATCH(iface_tau_diff_dot(mesh, w, g));
}
double iface_measure_absdiff(const AdmissibleMesh& mesh,
                             const std::vector<double>& w) {
  PMFV_DISPATCH(iface_measure_absdiff(mesh, w));
}
double iface_grad_pow(const AdmissibleMesh& mesh, const std::vector<double>& w,
                      double p) {
  PMFV_DISPATCH(iface_grad_pow(mesh, w, p));
}
double iface_grad_linf(const AdmissibleMesh& mesh,
                       const std::vector<double>& w) {
  PMFV_DISPATCH(iface_grad_linf(mesh, w));
}
void cell_averages(const AdmissibleMesh& mesh, const PointFn& f,
                   std::vector<double>& out) {
  PMFV_DISPATCH(cell_averages(mesh, f, out));
}
double quad_error_sq(const AdmissibleMesh& mesh, const std::vector<double>& v,
                     const PointFn& f) {
  PMFV_DISPATCH(quad_error_sq(mesh, v, f));
}
double quad_error_abs(const AdmissibleMesh& mesh, const std::vector<double>& v,
                      const PointFn& f) {
  PMFV_DISPATCH(quad_error_abs(mesh, v, f));
}

#undef PMFV_DISPATCH

}  // namespace pmfv::kernels
