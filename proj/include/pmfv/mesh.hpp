#pragma once

// Admissible finite-volume meshes: cell-centered tessellations where the
// segment joining two neighboring centers crosses their shared interface
// orthogonally, so that two-point transmissibilities tau = m_KL/|x_K-x_L|
// yield a consistent flux.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pmfv {

using Point = std::array<double, 2>;  // [1] ignored when dim == 1

struct Cell {
  Point center{0.0, 0.0};
  double measure = 0.0;  // d-volume
  double diam = 0.0;
  // Axis-aligned extent when known: {xmin,xmax,ymin,ymax} (y slots unused in
  // 1d). Built grids always carry it; loaded meshes may omit it, which
  // disables point location, quadrature and some validator checks.
  std::optional<std::array<double, 4>> box;
};

struct Interface {
  int k = -1, l = -1;    // adjacent cell ids, k < l
  double measure = 0.0;  // (d-1)-volume; counting measure 1 in 1d
  double distance = 0.0;  // |x_K - x_L|
  double tau = 0.0;       // measure / distance
  Point normal{0.0, 0.0};  // unit vector from cell k toward cell l
  // Optional geometry: 1d -> {x}, 2d -> edge endpoints {p0x,p0y,p1x,p1y}.
  std::optional<std::array<double, 4>> vertices;
};

struct BoundaryFace {
  int cell = -1;
  double measure = 0.0;
};

// Present on meshes produced by the uniform builders; enables O(1) point
// location and exact overlap integration of shifted reconstructions.
struct StructuredInfo {
  int nx = 0, ny = 1;
  std::array<double, 4> box{0, 0, 0, 0};  // {xmin,xmax,ymin,ymax}
};

class AdmissibleMesh {
 public:
  int dim = 1;
  std::vector<Cell> cells;
  std::vector<Interface> interfaces;  // interior only
  std::vector<BoundaryFace> boundary_faces;
  std::optional<std::array<double, 4>> domain_box;  // {xmin,xmax,ymin,ymax}
  std::optional<StructuredInfo> structured;

  std::size_t n_cells() const { return cells.size(); }
  std::size_t n_interfaces() const { return interfaces.size(); }

  std::optional<double> domain_measure() const;

  double h() const;    // max cell diameter
  double rho() const;  // mesh regularity (interface/volume + diam/distance sums)

  // meas(D_KL) = m_KL |x_K - x_L| / d for the diamond spanned by the two
  // centers and the interface.
  double diamond_measure(std::size_t iface) const;

  // Signed orientation helper: +normal if `from_cell` is interfaces[i].k,
  // -normal if it is .l.
  Point normal_from(std::size_t iface, int from_cell) const;

  // Cell-to-neighbor adjacency in CSR form (built once, read-only after).
  const std::vector<int>& adj_offsets() const { return adj_offsets_; }
  const std::vector<int>& adj_cells() const { return adj_cells_; }
  const std::vector<double>& adj_taus() const { return adj_taus_; }
  const std::vector<int>& adj_ifaces() const { return adj_ifaces_; }

  // Max |k - l| over interfaces; Jacobian bandwidth under the stored ordering.
  int index_bandwidth() const { return bandwidth_; }

  // Id of the cell containing x under the half-open convention
  // [min,max) per axis (last cell closed). Throws OutOfDomainError.
  int locate(const Point& x) const;

  // Recomputes adjacency and cached quantities; called by the factories and
  // the loader after the geometry fields are filled in.
  void finalize();

 private:
  std::vector<int> adj_offsets_, adj_cells_, adj_ifaces_;
  std::vector<double> adj_taus_;
  int bandwidth_ = 0;
};

// Uniform grid builders; centers are centroids, so the orthogonality
// condition holds by construction.
AdmissibleMesh build_uniform_grid(double xmin, double xmax, int nx);
AdmissibleMesh build_uniform_grid(const std::array<double, 4>& box, int nx,
                                  int ny);

// Plain-text mesh I/O. Grammar (# starts a comment, tokens are
// whitespace-separated):
//   dim n_cells n_interfaces
//   [domain xmin xmax [ymin ymax]]
//   n_cells lines:       id x [y] measure diam [xmin xmax [ymin ymax]]
//   n_interfaces lines:  idK idL measure [x | p0x p0y p1x p1y]
// Loaded meshes are validated; hard geometric failures throw GeometryError
// naming the offending entity.
AdmissibleMesh load_mesh(const std::string& path);
AdmissibleMesh read_mesh(std::istream& in, const std::string& origin = "<stream>");
void write_mesh(const AdmissibleMesh& mesh, std::ostream& out);

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  double residual = 0.0;  // worst-case violation, 0 when clean
  std::string detail;     // offending entity, if any
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double h = 0.0;
  double rho = 0.0;
  bool ok() const;
  const CheckResult* find(const std::string& name) const;
};

// Runs every admissibility invariant that the available geometry allows and
// reports pass/fail/skipped with worst-case residuals. `rel_tol` is the
// relative orthogonality/consistency tolerance.
ValidationReport validate_admissible(const AdmissibleMesh& mesh,
                                     double rel_tol = 1e-12);

}  // namespace pmfv
