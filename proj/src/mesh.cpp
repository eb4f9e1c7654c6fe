#include "pmfv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "pmfv/errors.hpp"

namespace pmfv {

namespace {

double dist2d(const Point& a, const Point& b, int dim) {
  double dx = a[0] - b[0];
  double dy = dim == 2 ? a[1] - b[1] : 0.0;
  return std::sqrt(dx * dx + dy * dy);
}

double triangle_area(const Point& a, double bx, double by, double cx,
                     double cy) {
  return 0.5 * std::abs((bx - a[0]) * (cy - a[1]) - (cx - a[0]) * (by - a[1]));
}

}  // namespace

std::optional<double> AdmissibleMesh::domain_measure() const {
  if (!domain_box) return std::nullopt;
  const auto& b = *domain_box;
  double m = b[1] - b[0];
  if (dim == 2) m *= b[3] - b[2];
  return m;
}

double AdmissibleMesh::h() const {
  double h = 0.0;
  for (const auto& c : cells) h = std::max(h, c.diam);
  return h;
}

double AdmissibleMesh::rho() const {
  double rho = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    double sum = 0.0;
    for (int a = adj_offsets_[k]; a < adj_offsets_[k + 1]; ++a) {
      const Interface& f = interfaces[adj_ifaces_[a]];
      sum += f.measure * f.distance / cells[k].measure +
             cells[k].diam / f.distance;
    }
    rho = std::max(rho, sum);
  }
  return rho;
}

double AdmissibleMesh::diamond_measure(std::size_t iface) const {
  const Interface& f = interfaces.at(iface);
  return f.measure * f.distance / static_cast<double>(dim);
}

Point AdmissibleMesh::normal_from(std::size_t iface, int from_cell) const {
  const Interface& f = interfaces.at(iface);
  if (from_cell == f.k) return f.normal;
  if (from_cell == f.l) return Point{-f.normal[0], -f.normal[1]};
  throw Error("normal_from: cell " + std::to_string(from_cell) +
              " not adjacent to interface " + std::to_string(iface));
}

void AdmissibleMesh::finalize() {
  const std::size_t nc = cells.size();
  adj_offsets_.assign(nc + 1, 0);
  for (const auto& f : interfaces) {
    ++adj_offsets_[f.k + 1];
    ++adj_offsets_[f.l + 1];
  }
  for (std::size_t i = 0; i < nc; ++i) adj_offsets_[i + 1] += adj_offsets_[i];
  adj_cells_.assign(adj_offsets_[nc], -1);
  adj_taus_.assign(adj_offsets_[nc], 0.0);
  adj_ifaces_.assign(adj_offsets_[nc], -1);
  std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  bandwidth_ = 0;
  for (std::size_t i = 0; i < interfaces.size(); ++i) {
    const Interface& f = interfaces[i];
    int a = cursor[f.k]++;
    adj_cells_[a] = f.l;
    adj_taus_[a] = f.tau;
    adj_ifaces_[a] = static_cast<int>(i);
    int b = cursor[f.l]++;
    adj_cells_[b] = f.k;
    adj_taus_[b] = f.tau;
    adj_ifaces_[b] = static_cast<int>(i);
    bandwidth_ = std::max(bandwidth_, std::abs(f.k - f.l));
  }
}

int AdmissibleMesh::locate(const Point& x) const {
  if (structured) {
    const auto& s = *structured;
    const auto& b = s.box;
    if (x[0] < b[0] || x[0] > b[1]) throw OutOfDomainError("point outside domain");
    double hx = (b[1] - b[0]) / s.nx;
    int i = std::min(static_cast<int>(std::floor((x[0] - b[0]) / hx)), s.nx - 1);
    if (dim == 1) return i;
    if (x[1] < b[2] || x[1] > b[3]) throw OutOfDomainError("point outside domain");
    double hy = (b[3] - b[2]) / s.ny;
    int j = std::min(static_cast<int>(std::floor((x[1] - b[2]) / hy)), s.ny - 1);
    return j * s.nx + i;
  }
  // Unstructured fallback: half-open boxes, then closed boxes for points on
  // the outermost faces.
  int closed_hit = -1;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!cells[c].box) throw Error("locate: mesh has no cell extents");
    const auto& b = *cells[c].box;
    bool in_half = x[0] >= b[0] && x[0] < b[1];
    bool in_closed = x[0] >= b[0] && x[0] <= b[1];
    if (dim == 2) {
      in_half = in_half && x[1] >= b[2] && x[1] < b[3];
      in_closed = in_closed && x[1] >= b[2] && x[1] <= b[3];
    }
    if (in_half) return static_cast<int>(c);
    if (in_closed && closed_hit < 0) closed_hit = static_cast<int>(c);
  }
  if (closed_hit >= 0) return closed_hit;
  throw OutOfDomainError("point outside domain");
}

AdmissibleMesh build_uniform_grid(double xmin, double xmax, int nx) {
  if (nx < 1) throw GeometryError("build_uniform_grid: need at least one cell");
  if (!(xmax > xmin)) throw GeometryError("build_uniform_grid: empty interval");
  AdmissibleMesh m;
  m.dim = 1;
  m.domain_box = {xmin, xmax, 0.0, 0.0};
  m.structured = StructuredInfo{nx, 1, {xmin, xmax, 0.0, 0.0}};
  double hx = (xmax - xmin) / nx;
  m.cells.resize(nx);
  for (int i = 0; i < nx; ++i) {
    Cell& c = m.cells[i];
    double a = xmin + i * hx;
    c.center = {a + 0.5 * hx, 0.0};
    c.measure = hx;
    c.diam = hx;
    c.box = {a, a + hx, 0.0, 0.0};
  }
  m.interfaces.reserve(nx - 1);
  for (int i = 0; i + 1 < nx; ++i) {
    Interface f;
    f.k = i;
    f.l = i + 1;
    f.measure = 1.0;  // counting measure on point interfaces
    f.distance = hx;
    f.tau = 1.0 / hx;
    f.normal = {1.0, 0.0};
    f.vertices = {xmin + (i + 1) * hx, 0.0, 0.0, 0.0};
    m.interfaces.push_back(f);
  }
  m.boundary_faces = {{0, 1.0}, {nx - 1, 1.0}};
  m.finalize();
  return m;
}

AdmissibleMesh build_uniform_grid(const std::array<double, 4>& box, int nx,
                                  int ny) {
  if (nx < 1 || ny < 1)
    throw GeometryError("build_uniform_grid: need at least one cell per axis");
  if (!(box[1] > box[0]) || !(box[3] > box[2]))
    throw GeometryError("build_uniform_grid: empty box");
  AdmissibleMesh m;
  m.dim = 2;
  m.domain_box = box;
  m.structured = StructuredInfo{nx, ny, box};
  double hx = (box[1] - box[0]) / nx;
  double hy = (box[3] - box[2]) / ny;
  m.cells.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Cell& c = m.cells[j * nx + i];
      double ax = box[0] + i * hx, ay = box[2] + j * hy;
      c.center = {ax + 0.5 * hx, ay + 0.5 * hy};
      c.measure = hx * hy;
      c.diam = std::hypot(hx, hy);
      c.box = {ax, ax + hx, ay, ay + hy};
    }
  }
  auto add_iface = [&](int k, int l, double measure, const Point& n,
                       std::array<double, 4> verts) {
    Interface f;
    f.k = k;
    f.l = l;
    f.measure = measure;
    f.distance = dist2d(m.cells[k].center, m.cells[l].center, 2);
    f.tau = measure / f.distance;
    f.normal = n;
    f.vertices = verts;
    m.interfaces.push_back(f);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      double x = box[0] + (i + 1) * hx;
      double ay = box[2] + j * hy;
      add_iface(j * nx + i, j * nx + i + 1, hy, {1.0, 0.0},
                {x, ay, x, ay + hy});
    }
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double y = box[2] + (j + 1) * hy;
      double ax = box[0] + i * hx;
      add_iface(j * nx + i, (j + 1) * nx + i, hx, {0.0, 1.0},
                {ax, y, ax + hx, y});
    }
  for (int i = 0; i < nx; ++i) {
    m.boundary_faces.push_back({i, hx});
    m.boundary_faces.push_back({(ny - 1) * nx + i, hx});
  }
  for (int j = 0; j < ny; ++j) {
    m.boundary_faces.push_back({j * nx, hy});
    m.boundary_faces.push_back({j * nx + nx - 1, hy});
  }
  m.finalize();
  return m;
}

namespace {

struct TokenLine {
  std::vector<std::string> tokens;
  int number = 0;
};

std::vector<TokenLine> tokenize(std::istream& in) {
  std::vector<TokenLine> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    TokenLine tl;
    tl.number = number;
    std::string tok;
    while (ls >> tok) tl.tokens.push_back(tok);
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
  }
  return out;
}

double parse_num(const std::string& tok, int line, const std::string& origin) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(origin + ":" + std::to_string(line) +
                     ": expected number, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(origin + ":" + std::to_string(line) +
                     ": trailing characters in '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line, const std::string& origin) {
  double v = parse_num(tok, line, origin);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ParseError(origin + ":" + std::to_string(line) +
                     ": expected integer, got '" + tok + "'");
  return i;
}

}  // namespace

AdmissibleMesh read_mesh(std::istream& in, const std::string& origin) {
  auto lines = tokenize(in);
  if (lines.empty()) throw ParseError(origin + ": empty mesh file");
  std::size_t li = 0;
  const auto& header = lines[li++];
  if (header.tokens.size() != 3)
    throw ParseError(origin + ":" + std::to_string(header.number) +
                     ": header must be 'dim n_cells n_interfaces'");
  AdmissibleMesh m;
  m.dim = parse_int(header.tokens[0], header.number, origin);
  int nc = parse_int(header.tokens[1], header.number, origin);
  int nf = parse_int(header.tokens[2], header.number, origin);
  if (m.dim != 1 && m.dim != 2)
    throw ParseError(origin + ":" + std::to_string(header.number) +
                     ": dim must be 1 or 2");
  if (nc < 1)
    throw GeometryError(origin + ": mesh has no cells");

  if (li < lines.size() && lines[li].tokens[0] == "domain") {
    const auto& dl = lines[li];
    std::size_t want = m.dim == 1 ? 3 : 5;
    if (dl.tokens.size() != want)
      throw ParseError(origin + ":" + std::to_string(dl.number) +
                       ": domain line needs " + std::to_string(want - 1) +
                       " numbers");
    std::array<double, 4> b{0, 0, 0, 0};
    for (std::size_t i = 1; i < want; ++i)
      b[i - 1] = parse_num(dl.tokens[i], dl.number, origin);
    m.domain_box = b;
    ++li;
  }

  m.cells.resize(nc);
  std::vector<bool> seen(nc, false);
  for (int c = 0; c < nc; ++c) {
    if (li >= lines.size())
      throw ParseError(origin + ": unexpected end of file in cell list");
    const auto& tl = lines[li++];
    const std::size_t base = m.dim == 1 ? 4 : 5;  // id center measure diam
    const std::size_t with_box = base + 2 * m.dim;
    if (tl.tokens.size() != base && tl.tokens.size() != with_box)
      throw ParseError(origin + ":" + std::to_string(tl.number) +
                       ": cell line needs " + std::to_string(base) + " or " +
                       std::to_string(with_box) + " tokens");
    int id = parse_int(tl.tokens[0], tl.number, origin);
    if (id < 0 || id >= nc || seen[id])
      throw ParseError(origin + ":" + std::to_string(tl.number) +
                       ": bad or duplicate cell id " + std::to_string(id));
    seen[id] = true;
    Cell& cell = m.cells[id];
    std::size_t t = 1;
    cell.center[0] = parse_num(tl.tokens[t++], tl.number, origin);
    if (m.dim == 2) cell.center[1] = parse_num(tl.tokens[t++], tl.number, origin);
    cell.measure = parse_num(tl.tokens[t++], tl.number, origin);
    cell.diam = parse_num(tl.tokens[t++], tl.number, origin);
    if (tl.tokens.size() == with_box) {
      std::array<double, 4> b{0, 0, 0, 0};
      for (int i = 0; i < 2 * m.dim; ++i)
        b[i] = parse_num(tl.tokens[t++], tl.number, origin);
      cell.box = b;
    }
  }

  m.interfaces.resize(nf);
  for (int f = 0; f < nf; ++f) {
    if (li >= lines.size())
      throw ParseError(origin + ": unexpected end of file in interface list");
    const auto& tl = lines[li++];
    const std::size_t base = 3;
    const std::size_t with_geom = base + (m.dim == 1 ? 1 : 4);
    if (tl.tokens.size() != base && tl.tokens.size() != with_geom)
      throw ParseError(origin + ":" + std::to_string(tl.number) +
                       ": interface line needs " + std::to_string(base) +
                       " or " + std::to_string(with_geom) + " tokens");
    Interface& iface = m.interfaces[f];
    int a = parse_int(tl.tokens[0], tl.number, origin);
    int b = parse_int(tl.tokens[1], tl.number, origin);
    if (a < 0 || a >= nc || b < 0 || b >= nc || a == b)
      throw ParseError(origin + ":" + std::to_string(tl.number) +
                       ": bad interface cell pair");
    iface.k = std::min(a, b);
    iface.l = std::max(a, b);
    iface.measure = parse_num(tl.tokens[2], tl.number, origin);
    if (tl.tokens.size() == with_geom) {
      std::array<double, 4> v{0, 0, 0, 0};
      for (std::size_t i = base; i < with_geom; ++i)
        v[i - base] = parse_num(tl.tokens[i], tl.number, origin);
      iface.vertices = v;
    }
    const Point& xk = m.cells[iface.k].center;
    const Point& xl = m.cells[iface.l].center;
    iface.distance = dist2d(xk, xl, m.dim);
    if (iface.distance > 0.0) {
      iface.tau = iface.measure / iface.distance;
      iface.normal = {(xl[0] - xk[0]) / iface.distance,
                      m.dim == 2 ? (xl[1] - xk[1]) / iface.distance : 0.0};
    }
  }
  if (li != lines.size())
    throw ParseError(origin + ":" + std::to_string(lines[li].number) +
                     ": trailing content after interface list");

  m.finalize();
  auto report = validate_admissible(m);
  for (const auto& chk : report.checks)
    if (chk.status == CheckStatus::fail)
      throw GeometryError(origin + ": " + chk.name + " violated (" +
                          chk.detail + ", residual " +
                          std::to_string(chk.residual) + ")");
  return m;
}

AdmissibleMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path + "'");
  return read_mesh(in, path);
}

void write_mesh(const AdmissibleMesh& m, std::ostream& out) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << m.dim << ' ' << m.n_cells() << ' ' << m.n_interfaces() << '\n';
  if (m.domain_box) {
    const auto& b = *m.domain_box;
    out << "domain " << num(b[0]) << ' ' << num(b[1]);
    if (m.dim == 2) out << ' ' << num(b[2]) << ' ' << num(b[3]);
    out << '\n';
  }
  for (std::size_t c = 0; c < m.n_cells(); ++c) {
    const Cell& cell = m.cells[c];
    out << c << ' ' << num(cell.center[0]);
    if (m.dim == 2) out << ' ' << num(cell.center[1]);
    out << ' ' << num(cell.measure) << ' ' << num(cell.diam);
    if (cell.box) {
      const auto& b = *cell.box;
      out << ' ' << num(b[0]) << ' ' << num(b[1]);
      if (m.dim == 2) out << ' ' << num(b[2]) << ' ' << num(b[3]);
    }
    out << '\n';
  }
  for (const auto& f : m.interfaces) {
    out << f.k << ' ' << f.l << ' ' << num(f.measure);
    if (f.vertices) {
      const auto& v = *f.vertices;
      if (m.dim == 1)
        out << ' ' << num(v[0]);
      else
        out << ' ' << num(v[0]) << ' ' << num(v[1]) << ' ' << num(v[2]) << ' '
            << num(v[3]);
    }
    out << '\n';
  }
}

bool ValidationReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::fail;
  });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate_admissible(const AdmissibleMesh& m, double rel_tol) {
  ValidationReport rep;
  rep.h = m.h();
  rep.rho = m.rho();

  auto add = [&rep](CheckResult r) { rep.checks.push_back(std::move(r)); };

  {  // strict positivity of measures, distances, transmissibilities
    CheckResult r{"positive-measures", CheckStatus::pass, 0.0, ""};
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
      if (m.cells[c].measure < worst) {
        worst = m.cells[c].measure;
        if (worst <= 0.0) r.detail = "cell " + std::to_string(c);
      }
    }
    for (std::size_t f = 0; f < m.n_interfaces(); ++f) {
      double v = std::min({m.interfaces[f].measure, m.interfaces[f].distance,
                           m.interfaces[f].tau});
      if (v < worst) {
        worst = v;
        if (worst <= 0.0) r.detail = "interface " + std::to_string(f);
      }
    }
    r.residual = worst;
    if (worst <= 0.0) r.status = CheckStatus::fail;
    add(r);
  }

  {  // interface table sanity: ids in range, no duplicate pairs
    CheckResult r{"interface-table", CheckStatus::pass, 0.0, ""};
    std::set<std::pair<int, int>> seen;
    for (std::size_t f = 0; f < m.n_interfaces(); ++f) {
      const Interface& iface = m.interfaces[f];
      bool bad = iface.k < 0 || iface.l < 0 ||
                 iface.k >= static_cast<int>(m.n_cells()) ||
                 iface.l >= static_cast<int>(m.n_cells()) || iface.k == iface.l;
      if (!bad && !seen.insert({iface.k, iface.l}).second) bad = true;
      if (bad) {
        r.status = CheckStatus::fail;
        r.detail = "interface " + std::to_string(f);
        r.residual = 1.0;
        break;
      }
    }
    add(r);
  }

  {  // sum of cell measures against the declared domain measure
    CheckResult r{"measure-sum", CheckStatus::skipped, 0.0, ""};
    if (auto total = m.domain_measure()) {
      double sum = 0.0;
      for (const auto& c : m.cells) sum += c.measure;
      r.residual = std::abs(sum - *total) / *total;
      r.status = r.residual <= 1e-12 ? CheckStatus::pass : CheckStatus::fail;
    }
    add(r);
  }

  {  // centers belong to their cells
    CheckResult r{"center-inside", CheckStatus::skipped, 0.0, ""};
    bool any = false;
    for (std::size_t c = 0; c < m.n_cells(); ++c) {
      if (!m.cells[c].box) continue;
      any = true;
      const auto& b = *m.cells[c].box;
      const Point& x = m.cells[c].center;
      double out = std::max({b[0] - x[0], x[0] - b[1], 0.0});
      if (m.dim == 2) out = std::max({out, b[2] - x[1], x[1] - b[3]});
      if (out > r.residual) {
        r.residual = out;
        r.detail = "cell " + std::to_string(c);
      }
    }
    if (any)
      r.status = r.residual <= rel_tol * std::max(rep.h, 1.0)
                     ? CheckStatus::pass
                     : CheckStatus::fail;
    add(r);
  }

  {  // orthogonality of [x_K,x_L] to the interface plane
    CheckResult r{"orthogonality", CheckStatus::skipped, 0.0, ""};
    if (m.dim == 1) {
      r.status = m.n_interfaces() ? CheckStatus::pass : CheckStatus::skipped;
    } else {
      bool any = false;
      for (std::size_t f = 0; f < m.n_interfaces(); ++f) {
        const Interface& iface = m.interfaces[f];
        if (!iface.vertices) continue;
        any = true;
        const auto& v = *iface.vertices;
        double ex = v[2] - v[0], ey = v[3] - v[1];
        const Point& xk = m.cells[iface.k].center;
        const Point& xl = m.cells[iface.l].center;
        double dx = xl[0] - xk[0], dy = xl[1] - xk[1];
        double elen = std::hypot(ex, ey), dlen = std::hypot(dx, dy);
        if (elen == 0.0 || dlen == 0.0) continue;
        double cosang = std::abs(dx * ex + dy * ey) / (elen * dlen);
        if (cosang > r.residual) {
          r.residual = cosang;
          r.detail = "interface " + std::to_string(f);
        }
      }
      if (any)
        r.status = r.residual <= rel_tol ? CheckStatus::pass : CheckStatus::fail;
    }
    add(r);
  }

  {  // the center segment actually crosses the interface
    CheckResult r{"interface-crossing", CheckStatus::skipped, 0.0, ""};
    bool any = false;
    for (std::size_t f = 0; f < m.n_interfaces(); ++f) {
      const Interface& iface = m.interfaces[f];
      if (!iface.vertices) continue;
      any = true;
      const auto& v = *iface.vertices;
      const Point& xk = m.cells[iface.k].center;
      const Point& xl = m.cells[iface.l].center;
      double viol = 0.0;
      if (m.dim == 1) {
        // interface point must sit between the two centers
        double lo = std::min(xk[0], xl[0]), hi = std::max(xk[0], xl[0]);
        viol = std::max({lo - v[0], v[0] - hi, 0.0}) / iface.distance;
      } else {
        // intersect [x_K,x_L] with the edge line, then check both parameters
        double ex = v[2] - v[0], ey = v[3] - v[1];
        double elen = std::hypot(ex, ey);
        double nx = ey / elen, ny = -ex / elen;  // edge-line normal
        double dx = xl[0] - xk[0], dy = xl[1] - xk[1];
        double denom = dx * nx + dy * ny;
        if (std::abs(denom) < 1e-300) {
          viol = 1.0;
        } else {
          double s = ((v[0] - xk[0]) * nx + (v[1] - xk[1]) * ny) / denom;
          double ix = xk[0] + s * dx, iy = xk[1] + s * dy;
          double t = ((ix - v[0]) * ex + (iy - v[1]) * ey) / (elen * elen);
          viol = std::max({-s, s - 1.0, -t, t - 1.0, 0.0});
        }
      }
      if (viol > r.residual) {
        r.residual = viol;
        r.detail = "interface " + std::to_string(f);
      }
    }
    if (any)
      r.status = r.residual <= rel_tol ? CheckStatus::pass : CheckStatus::fail;
    add(r);
  }

  {  // declared interface measure vs geometric length (counting measure in 1d)
    CheckResult r{"interface-measure", CheckStatus::skipped, 0.0, ""};
    bool any = false;
    for (std::size_t f = 0; f < m.n_interfaces(); ++f) {
      const Interface& iface = m.interfaces[f];
      double res = -1.0;
      if (m.dim == 1) {
        any = true;
        res = std::abs(iface.measure - 1.0);
      } else if (iface.vertices) {
        any = true;
        const auto& v = *iface.vertices;
        double elen = std::hypot(v[2] - v[0], v[3] - v[1]);
        res = std::abs(elen - iface.measure) / iface.measure;
      }
      if (res > r.residual) {
        r.residual = res;
        r.detail = "interface " + std::to_string(f);
      }
    }
    if (any)
      r.status = r.residual <= rel_tol ? CheckStatus::pass : CheckStatus::fail;
    add(r);
  }

  {  // meas(D_KL) = m_KL |x_K - x_L| / d against the actual hull area
    CheckResult r{"diamond-identity", CheckStatus::skipped, 0.0, ""};
    bool any = false;
    for (std::size_t f = 0; f < m.n_interfaces(); ++f) {
      const Interface& iface = m.interfaces[f];
      if (!iface.vertices) continue;
      any = true;
      double geom;
      if (m.dim == 1) {
        const auto& v = *iface.vertices;
        geom = std::abs(m.cells[iface.k].center[0] - v[0]) +
               std::abs(v[0] - m.cells[iface.l].center[0]);
      } else {
        const auto& v = *iface.vertices;
        geom = triangle_area(m.cells[iface.k].center, v[0], v[1], v[2], v[3]) +
               triangle_area(m.cells[iface.l].center, v[0], v[1], v[2], v[3]);
      }
      double res = std::abs(geom - m.diamond_measure(f)) / m.diamond_measure(f);
      if (res > r.residual) {
        r.residual = res;
        r.detail = "interface " + std::to_string(f);
      }
    }
    if (any)
      r.status = r.residual <= rel_tol ? CheckStatus::pass : CheckStatus::fail;
    add(r);
  }

  return rep;
}

}  // namespace pmfv
