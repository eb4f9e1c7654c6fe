#pragma once

// Maximal monotone graphs on R, their resolvents, and the scalar
// inequalities the per-step energy estimates rest on. Graphs are handled
// through their resolvent (Id + lambda*beta)^-1, which is single-valued and
// non-expansive; multi-valued graphs (vertical segments) are encoded as
// breakpoint lists.

#include <memory>
#include <vector>

namespace pmfv {

struct ResolventSettings {
  double bracket_growth = 2.0;
  double tol = 1e-14;  // scalar tolerance, relative to max(1,|y|)
  int max_iter = 256;
};

class MonotoneGraph {
 public:
  virtual ~MonotoneGraph() = default;

  // inf / sup of the image set beta(x); equal where the graph is
  // single-valued.
  virtual double lower(double x) const = 0;
  virtual double upper(double x) const = 0;

  bool contains(double x, double y, double tol) const {
    return y >= lower(x) - tol && y <= upper(x) + tol;
  }

  // The unique u with y in u + lambda*beta(u), for lambda > 0. Bracketed
  // bisection with a safeguarded secant step; throws StructuralError if no
  // bracket is found (non-maximal input).
  double resolvent(double lambda, double y) const;

  ResolventSettings settings;
};

// psi(u) = |u|^(q-1) u and its primitive-of-sqrt-derivative transform
// phi(u) = 2 sqrt(q)/(q+1) |u|^((q-1)/2) u. q = 1 is the linear mode.
double power_psi(double u, double q);
double power_psi_prime(double u, double q);
double power_phi(double u, double q);

class PowerLaw final : public MonotoneGraph {
 public:
  explicit PowerLaw(double q);
  double exponent() const { return q_; }
  double psi(double u) const { return power_psi(u, q_); }
  double psi_prime(double u) const { return power_psi_prime(u, q_); }
  double phi(double u) const { return power_phi(u, q_); }
  double lower(double x) const override { return psi(x); }
  double upper(double x) const override { return psi(x); }

 private:
  double q_;
};

// Piecewise-linear maximal monotone graph given by breakpoints
// (x_i, y_lo_i, y_hi_i) with x strictly increasing, y_lo_i <= y_hi_i
// (vertical segment where strict), y_hi_i <= y_lo_{i+1}, linear
// interpolation between consecutive breakpoints and constant end slopes.
class PiecewiseGraph final : public MonotoneGraph {
 public:
  struct Breakpoint {
    double x, y_lo, y_hi;
  };

  PiecewiseGraph(std::vector<Breakpoint> pts, double left_slope,
                 double right_slope);
  double lower(double x) const override;
  double upper(double x) const override;

 private:
  std::vector<Breakpoint> pts_;
  double left_slope_, right_slope_;
};

// w = a + b with b = (Id+beta)^-1(w), a = w - b in beta(b); both maps are
// 1-Lipschitz and nondecreasing.
struct ABDecomposition {
  double a;  // (Id + beta^-1)^-1 (w)
  double b;  // (Id + beta)^-1 (w)
};
ABDecomposition decompose_ab(const MonotoneGraph& graph, double w);

// (a-b)(psi(a)-psi(b)) - (phi(a)-phi(b))^2; nonnegative for all pairs.
double cs_gap(double a, double b, double q);

// (a-b)a - (a^2 - b^2)/2 = (a-b)^2/2; the one-step multiplier slack.
double euler_multiplier_gap(double a, double b);

// (3/2 a - 2b + c/2)a - ((a^2 + (2a-b)^2 - b^2 - (2b-c)^2))/4; equals
// (a - 2b + c)^2 / 4 identically.
double bdf2_multiplier_gap(double a, double b, double c);

}  // namespace pmfv
