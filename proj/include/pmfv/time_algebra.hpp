#pragma once

// Multistep time-differentiation algebra. A rule is carried by a lower
// triangular matrix Mhat acting on the time slots of a trajectory; Mhat
// factors as T^-1 * Ahat * T * M where M is the one-step difference matrix,
// T scales rows by step sizes and Ahat = diag(1, A) mixes one-step
// differences into the multistep stencil. The 1-norm of A^-1 is the
// stability number the dual time-derivative estimate depends on.

#include <string>
#include <vector>

#include "pmfv/banded.hpp"

namespace pmfv {

struct TimeGrid {
  std::vector<double> times;  // t_0 = 0 < t_1 < ... < t_n = T

  static TimeGrid uniform(double t_final, int n);

  int steps() const { return static_cast<int>(times.size()) - 1; }
  double t_final() const { return times.back(); }
  double dt(int k) const { return times[k] - times[k - 1]; }  // k in 1..n
  double dt_max() const;
  bool is_uniform(double rel_tol = 1e-12) const;
  void validate() const;  // strict monotonicity, t_0 = 0
};

// Row-major (rows x cols) value table; row k holds the spatial vector of
// time slot k.
struct SlotMatrix {
  int rows = 0, cols = 0;
  std::vector<double> v;

  SlotMatrix() = default;
  SlotMatrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
};

enum class TimeRule { euler, bdf2, custom };

std::string to_string(TimeRule rule);

class MultistepOperator {
 public:
  TimeGrid grid;
  TimeRule rule = TimeRule::euler;
  BandedMatrix mhat;   // (n+1)x(n+1), row k = stencil for slot k
  BandedMatrix ahat;   // (n+1)x(n+1), diag(1, A)
  BandedMatrix a;      // n x n

  // w = Mhat * u over the time index; row 0 reproduces u^0 by the fixed
  // first-line convention.
  SlotMatrix apply_delta(const SlotMatrix& u) const;

  // phi_hat = (Ahat^-T) * phi over the time index (Lemma-style test-vector
  // transform; the dual pairing against delta-hat then matches the one-step
  // pairing against phi).
  SlotMatrix transform_test_vector(const SlotMatrix& phi) const;
};

MultistepOperator build_euler(const TimeGrid& grid);

// Uniform-step BDF2: slot 1 is a one-step difference, slots k >= 2 carry
// (3/2 u^k - 2 u^{k-1} + 1/2 u^{k-2}) / dt. Throws StructuralError on
// nonuniform grids.
MultistepOperator build_bdf2_uniform(const TimeGrid& grid);

// Custom rule from explicit lower-triangular rows of A (row i holds
// coefficients for columns 0..i). The stability check is the caller's
// gatekeeper.
MultistepOperator build_custom(const TimeGrid& grid,
                               const std::vector<std::vector<double>>& a_rows);

struct StabilityCheck {
  double norm1_a_inv = 0.0;
  bool pass = false;
};

// Exact ||A^-1||_1 by forward substitution on unit basis columns.
StabilityCheck check_at(const MultistepOperator& op, double c_threshold);

// Building blocks exposed for structural verification.
BandedMatrix one_step_matrix(const TimeGrid& grid);        // M
BandedMatrix difference_matrix(int n);                     // D, (n+1)^2
BandedMatrix step_scaling_matrix(const TimeGrid& grid);    // T, diag(1, dt_k)
BandedMatrix all_ones_lower(int size);                     // D^-1

}  // namespace pmfv
