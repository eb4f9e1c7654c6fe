#include "pmfv/monotone_graph.hpp"

#include <algorithm>
#include <cmath>

#include "pmfv/errors.hpp"

namespace pmfv {

double power_psi(double u, double q) {
  if (u == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(u), q), u);
}

double power_psi_prime(double u, double q) {
  if (u == 0.0) return q > 1.0 ? 0.0 : 1.0;
  return q * std::pow(std::abs(u), q - 1.0);
}

double power_phi(double u, double q) {
  if (u == 0.0) return 0.0;
  double c = 2.0 * std::sqrt(q) / (q + 1.0);
  return c * std::copysign(std::pow(std::abs(u), 0.5 * (q + 1.0)), u);
}

PowerLaw::PowerLaw(double q) : q_(q) {
  if (!(q >= 1.0)) throw Error("power law needs q >= 1");
}

double MonotoneGraph::resolvent(double lambda, double y) const {
  if (!(lambda > 0.0)) throw Error("resolvent needs lambda > 0");
  auto f_lo = [&](double u) { return u + lambda * lower(u) - y; };
  auto f_hi = [&](double u) { return u + lambda * upper(u) - y; };

  // Bracket [lo, hi] with f_hi(lo) <= 0 <= f_lo(hi).
  double span = std::max(1.0, std::abs(y));
  double lo = y - span, hi = y + span;
  int guard = 0;
  while (f_hi(lo) > 0.0) {
    lo -= span;
    span *= settings.bracket_growth;
    if (++guard > 200)
      throw StructuralError("resolvent: no lower bracket (graph not maximal?)");
  }
  guard = 0;
  span = std::max(1.0, std::abs(y));
  while (f_lo(hi) < 0.0) {
    hi += span;
    span *= settings.bracket_growth;
    if (++guard > 200)
      throw StructuralError("resolvent: no upper bracket (graph not maximal?)");
  }

  const double tol = settings.tol * std::max(1.0, std::abs(y));
  auto f_mid = [&](double u) { return u + 0.5 * lambda * (lower(u) + upper(u)) - y; };
  double flo = f_mid(lo), fhi = f_mid(hi);
  for (int it = 0; it < settings.max_iter && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    // secant candidate, kept only when it lands well inside the bracket
    if (fhi != flo) {
      double sec = lo - flo * (hi - lo) / (fhi - flo);
      double margin = 0.01 * (hi - lo);
      if (sec > lo + margin && sec < hi - margin) mid = sec;
    }
    if (f_hi(mid) < 0.0) {
      lo = mid;
      flo = f_mid(mid);
    } else if (f_lo(mid) > 0.0) {
      hi = mid;
      fhi = f_mid(mid);
    } else {
      return mid;  // y - mid inside lambda*beta(mid)
    }
  }
  return 0.5 * (lo + hi);
}

PiecewiseGraph::PiecewiseGraph(std::vector<Breakpoint> pts, double left_slope,
                               double right_slope)
    : pts_(std::move(pts)), left_slope_(left_slope), right_slope_(right_slope) {
  if (pts_.empty()) throw Error("piecewise graph needs at least one breakpoint");
  if (left_slope_ < 0.0 || right_slope_ < 0.0)
    throw Error("piecewise graph needs nonnegative end slopes");
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    if (pts_[i].y_lo > pts_[i].y_hi)
      throw Error("piecewise graph breakpoint with y_lo > y_hi");
    if (i > 0) {
      if (!(pts_[i].x > pts_[i - 1].x))
        throw Error("piecewise graph breakpoints must increase in x");
      if (pts_[i].y_lo < pts_[i - 1].y_hi)
        throw Error("piecewise graph must be monotone across breakpoints");
    }
  }
}

double PiecewiseGraph::lower(double x) const {
  if (x < pts_.front().x)
    return pts_.front().y_lo - left_slope_ * (pts_.front().x - x);
  if (x > pts_.back().x)
    return pts_.back().y_hi + right_slope_ * (x - pts_.back().x);
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    if (x == pts_[i].x) return pts_[i].y_lo;
    if (i + 1 < pts_.size() && x > pts_[i].x && x < pts_[i + 1].x) {
      double t = (x - pts_[i].x) / (pts_[i + 1].x - pts_[i].x);
      return pts_[i].y_hi + t * (pts_[i + 1].y_lo - pts_[i].y_hi);
    }
  }
  return pts_.back().y_hi;
}

double PiecewiseGraph::upper(double x) const {
  if (x < pts_.front().x || x > pts_.back().x) return lower(x);
  for (std::size_t i = 0; i < pts_.size(); ++i)
    if (x == pts_[i].x) return pts_[i].y_hi;
  return lower(x);
}

ABDecomposition decompose_ab(const MonotoneGraph& graph, double w) {
  double b = graph.resolvent(1.0, w);
  return {w - b, b};
}

double cs_gap(double a, double b, double q) {
  double d_psi = power_psi(a, q) - power_psi(b, q);
  double d_phi = power_phi(a, q) - power_phi(b, q);
  return (a - b) * d_psi - d_phi * d_phi;
}

double euler_multiplier_gap(double a, double b) {
  return (a - b) * a - 0.5 * (a * a - b * b);
}

double bdf2_multiplier_gap(double a, double b, double c) {
  double lhs = (1.5 * a - 2.0 * b + 0.5 * c) * a;
  double two_a_b = 2.0 * a - b;
  double two_b_c = 2.0 * b - c;
  double rhs = 0.25 * (a * a + two_a_b * two_a_b - b * b - two_b_c * two_b_c);
  return lhs - rhs;
}

}  // namespace pmfv
