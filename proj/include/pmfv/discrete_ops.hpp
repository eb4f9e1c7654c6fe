#pragma once

// Reconstruction and projection operators on admissible meshes: the
// piecewise-constant reconstruction, the diamond-cell gradient, cell-average
// projection, the discrete norms and the space-translate probe.

#include <vector>

#include "pmfv/kernels.hpp"
#include "pmfv/mesh.hpp"
#include "pmfv/monotone_graph.hpp"
#include "pmfv/time_algebra.hpp"

namespace pmfv {

struct CellVector {
  const AdmissibleMesh* mesh = nullptr;
  std::vector<double> values;

  CellVector() = default;
  CellVector(const AdmissibleMesh& m, std::vector<double> v)
      : mesh(&m), values(std::move(v)) {}
  static CellVector constant(const AdmissibleMesh& m, double c) {
    return CellVector(m, std::vector<double>(m.n_cells(), c));
  }
  void validate() const;  // length matches mesh, all values finite
};

// Positive per-cell weight with global bounds; constant 1 unless a model
// supplies one.
struct WeightField {
  std::vector<double> values;
  double lo = 1.0, hi = 1.0;

  static WeightField constant(const AdmissibleMesh& m, double c = 1.0) {
    WeightField w;
    w.values.assign(m.n_cells(), c);
    w.lo = w.hi = c;
    return w;
  }
  void validate() const;  // 0 < lo <= w_K <= hi
};

// One vector per interior interface, supported on the diamond cell and
// collinear with the interface normal.
struct DiamondField {
  const AdmissibleMesh* mesh = nullptr;
  std::vector<Point> values;
};

// Value of the piecewise-constant reconstruction at a point (half-open cell
// convention along lexicographic axis order). Throws OutOfDomainError.
double reconstruct(const CellVector& v, const Point& x);

// Per-diamond gradient dim * (v_K - v_L)/|x_K - x_L| along the
// center-to-center direction.
DiamondField discrete_gradient(const CellVector& v);

// Cell averages of f by the tensor Gauss rule.
CellVector project(const AdmissibleMesh& mesh, const kernels::PointFn& f);

// L^p norm of the reconstruction, (sum m_K |v_K|^p)^(1/p).
double norm_lp_pi(const CellVector& v, double p);
// L^p norm of the discrete gradient over the diamonds.
double norm_lp_grad(const CellVector& v, double p);
// Combined norm ||pi v||_Lp + ||grad v||_Lp.
double norm_pm(const CellVector& v, double p);
// sqrt(||pi v||_L2^2 + ||grad v||_L2^2), the energy-style mesh norm.
double norm_2t(const CellVector& v);

// Space-time seminorm (sum_k dt_k ||slot_k||_{p,m}^q)^(1/q) over slots 1..n.
double seminorm_pmqn(const AdmissibleMesh& mesh, const TimeGrid& grid,
                     const SlotMatrix& u, double p, double q);

// || pi v(.+shift) - pi v ||_{L2(R^d)} / ||v||_{2,T} with extension by zero;
// exact overlap integration on structured grids, subcell midpoint quadrature
// otherwise. Throws Error on the zero vector.
double translate_probe(const CellVector& v, const Point& shift);

// Componentwise membership v_K in beta(u_K), within tol.
bool graph_compatible(const CellVector& u, const CellVector& v,
                      const MonotoneGraph& graph, double tol = 1e-12);

// Integral over the space-time cylinder of omega * (pi a)(pi b) using the
// slab reconstruction on (t_{k-1}, t_k] (slot 0 never enters).
double spacetime_pairing(const AdmissibleMesh& mesh, const TimeGrid& grid,
                         const WeightField& omega, const SlotMatrix& a,
                         const SlotMatrix& b);

}  // namespace pmfv
