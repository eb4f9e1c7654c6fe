#include "pmfv/discrete_ops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pmfv/errors.hpp"

namespace pmfv {

void CellVector::validate() const {
  if (!mesh) throw Error("cell vector has no mesh");
  if (values.size() != mesh->n_cells())
    throw Error("cell vector length does not match the mesh");
  for (double v : values)
    if (!std::isfinite(v)) throw Error("cell vector has a non-finite entry");
}

void WeightField::validate() const {
  if (!(lo > 0.0)) throw Error("weight field needs a positive lower bound");
  for (double w : values)
    if (!(w >= lo && w <= hi)) throw Error("weight field value out of bounds");
}

double reconstruct(const CellVector& v, const Point& x) {
  return v.values[v.mesh->locate(x)];
}

DiamondField discrete_gradient(const CellVector& v) {
  const AdmissibleMesh& m = *v.mesh;
  DiamondField g;
  g.mesh = &m;
  g.values.resize(m.n_interfaces());
  const double d = m.dim;
  for (std::size_t i = 0; i < m.n_interfaces(); ++i) {
    const Interface& f = m.interfaces[i];
    // d (v_K - v_L)/dist along the L->K direction, i.e. -normal
    double c = d * (v.values[f.l] - v.values[f.k]) / f.distance;
    g.values[i] = {c * f.normal[0], c * f.normal[1]};
  }
  return g;
}

CellVector project(const AdmissibleMesh& mesh, const kernels::PointFn& f) {
  CellVector out;
  out.mesh = &mesh;
  kernels::cell_averages(mesh, f, out.values);
  return out;
}

double norm_lp_pi(const CellVector& v, double p) {
  std::vector<double> m(v.mesh->n_cells());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = v.mesh->cells[k].measure;
  return std::pow(kernels::cell_weighted_abs_pow(m, v.values, p), 1.0 / p);
}

double norm_lp_grad(const CellVector& v, double p) {
  return std::pow(kernels::iface_grad_pow(*v.mesh, v.values, p), 1.0 / p);
}

double norm_pm(const CellVector& v, double p) {
  return norm_lp_pi(v, p) + norm_lp_grad(v, p);
}

double norm_2t(const CellVector& v) {
  std::vector<double> m(v.mesh->n_cells());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = v.mesh->cells[k].measure;
  double pi2 = kernels::cell_weighted_sumsq(m, v.values);
  double grad2 =
      v.mesh->dim * kernels::iface_tau_diff_sumsq(*v.mesh, v.values);
  return std::sqrt(pi2 + grad2);
}

double seminorm_pmqn(const AdmissibleMesh& mesh, const TimeGrid& grid,
                     const SlotMatrix& u, double p, double q) {
  if (u.rows != grid.steps() + 1 || u.cols != static_cast<int>(mesh.n_cells()))
    throw Error("seminorm: slot matrix shape mismatch");
  if (p < 1.0 || q < 1.0) throw Error("seminorm needs p,q >= 1");
  double acc = 0.0;
  CellVector slot(mesh, std::vector<double>(mesh.n_cells()));
  for (int k = 1; k <= grid.steps(); ++k) {
    for (int c = 0; c < u.cols; ++c) slot.values[c] = u.at(k, c);
    acc += grid.dt(k) * std::pow(norm_pm(slot, p), q);
  }
  return std::pow(acc, 1.0 / q);
}

namespace {

// Value of pi v at x, extended by zero outside the domain box.
double extended_value(const CellVector& v, double x, double y) {
  const AdmissibleMesh& m = *v.mesh;
  const auto& b = *m.domain_box;
  if (x < b[0] || x > b[1]) return 0.0;
  if (m.dim == 2 && (y < b[2] || y > b[3])) return 0.0;
  return v.values[m.locate({x, y})];
}

std::vector<double> axis_breakpoints(double lo, double hi, int n, double shift) {
  std::vector<double> bp;
  bp.reserve(2 * (n + 1));
  double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    bp.push_back(lo + i * h);
    bp.push_back(lo + i * h - shift);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

}  // namespace

double translate_probe(const CellVector& v, const Point& shift) {
  const AdmissibleMesh& m = *v.mesh;
  double denom = norm_2t(v);
  if (denom == 0.0)
    throw Error("translate probe: ratio undefined for the zero vector");
  if (!m.domain_box)
    throw Error("translate probe: mesh has no domain box");
  const auto& b = *m.domain_box;

  double acc = 0.0;
  if (m.structured) {
    const auto& s = *m.structured;
    // The integrand is piecewise constant on the arrangement of the grid
    // and its shifted copy; integrate it exactly cell by elementary cell.
    auto xbp = axis_breakpoints(b[0], b[1], s.nx, shift[0]);
    if (m.dim == 1) {
      for (std::size_t i = 0; i + 1 < xbp.size(); ++i) {
        double mid = 0.5 * (xbp[i] + xbp[i + 1]);
        double g = extended_value(v, mid + shift[0], 0.0) -
                   extended_value(v, mid, 0.0);
        acc += g * g * (xbp[i + 1] - xbp[i]);
      }
    } else {
      auto ybp = axis_breakpoints(b[2], b[3], s.ny, shift[1]);
      for (std::size_t i = 0; i + 1 < xbp.size(); ++i) {
        double xm = 0.5 * (xbp[i] + xbp[i + 1]);
        double wx = xbp[i + 1] - xbp[i];
        for (std::size_t j = 0; j + 1 < ybp.size(); ++j) {
          double ym = 0.5 * (ybp[j] + ybp[j + 1]);
          double g = extended_value(v, xm + shift[0], ym + shift[1]) -
                     extended_value(v, xm, ym);
          acc += g * g * wx * (ybp[j + 1] - ybp[j]);
        }
      }
    }
  } else {
    // Subcell midpoint quadrature over the union of the domain and its
    // preimage under the shift.
    double hmin = m.h();
    for (const auto& c : m.cells) hmin = std::min(hmin, c.diam);
    double step = hmin / 8.0;
    double x0 = b[0] - std::abs(shift[0]) - step, x1 = b[1] + std::abs(shift[0]) + step;
    double y0 = m.dim == 2 ? b[2] - std::abs(shift[1]) - step : 0.0;
    double y1 = m.dim == 2 ? b[3] + std::abs(shift[1]) + step : 0.0;
    int nx = static_cast<int>(std::ceil((x1 - x0) / step));
    int ny = m.dim == 2 ? static_cast<int>(std::ceil((y1 - y0) / step)) : 1;
    double ax = (x1 - x0) / nx, ay = m.dim == 2 ? (y1 - y0) / ny : 1.0;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        double x = x0 + (i + 0.5) * ax;
        double y = m.dim == 2 ? y0 + (j + 0.5) * ay : 0.0;
        double g = extended_value(v, x + shift[0], y + shift[1]) -
                   extended_value(v, x, y);
        acc += g * g * ax * ay;
      }
  }
  return std::sqrt(acc) / denom;
}

bool graph_compatible(const CellVector& u, const CellVector& v,
                      const MonotoneGraph& graph, double tol) {
  if (u.mesh != v.mesh) throw Error("graph_compatible: meshes differ");
  for (std::size_t k = 0; k < u.values.size(); ++k)
    if (!graph.contains(u.values[k], v.values[k], tol)) return false;
  return true;
}

double spacetime_pairing(const AdmissibleMesh& mesh, const TimeGrid& grid,
                         const WeightField& omega, const SlotMatrix& a,
                         const SlotMatrix& b) {
  const int nc = static_cast<int>(mesh.n_cells());
  if (a.cols != nc || b.cols != nc || a.rows != grid.steps() + 1 ||
      b.rows != grid.steps() + 1)
    throw Error("spacetime_pairing: shape mismatch");
  std::vector<double> wm(nc);
  for (int k = 0; k < nc; ++k) wm[k] = omega.values[k] * mesh.cells[k].measure;
  std::vector<double> ak(nc), bk(nc);
  double acc = 0.0;
  for (int k = 1; k <= grid.steps(); ++k) {
    for (int c = 0; c < nc; ++c) {
      ak[c] = a.at(k, c);
      bk[c] = b.at(k, c);
    }
    acc += grid.dt(k) * kernels::cell_weighted_dot(wm, ak, bk);
  }
  return acc;
}

}  // namespace pmfv
