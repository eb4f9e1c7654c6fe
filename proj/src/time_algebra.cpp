#include "pmfv/time_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "pmfv/errors.hpp"

namespace pmfv {

TimeGrid TimeGrid::uniform(double t_final, int n) {
  if (n < 1) throw StructuralError("time grid needs at least one step");
  if (!(t_final > 0.0)) throw StructuralError("time horizon must be positive");
  TimeGrid g;
  g.times.resize(n + 1);
  for (int k = 0; k <= n; ++k) g.times[k] = t_final * k / n;
  g.times[n] = t_final;
  return g;
}

double TimeGrid::dt_max() const {
  double m = 0.0;
  for (int k = 1; k <= steps(); ++k) m = std::max(m, dt(k));
  return m;
}

bool TimeGrid::is_uniform(double rel_tol) const {
  double ref = dt(1);
  for (int k = 2; k <= steps(); ++k)
    if (std::abs(dt(k) - ref) > rel_tol * ref) return false;
  return true;
}

void TimeGrid::validate() const {
  if (times.size() < 2) throw StructuralError("time grid needs at least one step");
  if (times.front() != 0.0) throw StructuralError("time grid must start at 0");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw StructuralError("time grid must be strictly increasing");
}

std::string to_string(TimeRule rule) {
  switch (rule) {
    case TimeRule::euler: return "euler";
    case TimeRule::bdf2: return "bdf2";
    case TimeRule::custom: return "custom";
  }
  return "?";
}

BandedMatrix one_step_matrix(const TimeGrid& grid) {
  int n = grid.steps();
  BandedMatrix m(n + 1, 1, 0);
  m.at(0, 0) = 1.0;
  for (int k = 1; k <= n; ++k) {
    m.at(k, k - 1) = -1.0 / grid.dt(k);
    m.at(k, k) = 1.0 / grid.dt(k);
  }
  return m;
}

BandedMatrix difference_matrix(int n) {
  BandedMatrix d(n + 1, 1, 0);
  d.at(0, 0) = 1.0;
  for (int k = 1; k <= n; ++k) {
    d.at(k, k - 1) = -1.0;
    d.at(k, k) = 1.0;
  }
  return d;
}

BandedMatrix step_scaling_matrix(const TimeGrid& grid) {
  int n = grid.steps();
  BandedMatrix t(n + 1, 0, 0);
  t.at(0, 0) = 1.0;
  for (int k = 1; k <= n; ++k) t.at(k, k) = grid.dt(k);
  return t;
}

BandedMatrix all_ones_lower(int size) {
  BandedMatrix d(size, size - 1, 0);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j <= i; ++j) d.at(i, j) = 1.0;
  return d;
}

namespace {

// Mhat = T^-1 * Ahat * T * M, the generic assembly from the A-block.
BandedMatrix assemble_mhat(const TimeGrid& grid, const BandedMatrix& ahat) {
  int n = grid.steps();
  BandedMatrix tinv(n + 1, 0, 0);
  tinv.at(0, 0) = 1.0;
  for (int k = 1; k <= n; ++k) tinv.at(k, k) = 1.0 / grid.dt(k);
  BandedMatrix t = step_scaling_matrix(grid);
  return band_multiply(band_multiply(tinv, ahat),
                       band_multiply(t, one_step_matrix(grid)));
}

BandedMatrix embed_ahat(const BandedMatrix& a) {
  int n = a.size();
  BandedMatrix ahat(n + 1, a.lower_bandwidth() + 1, 0);
  ahat.at(0, 0) = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - a.lower_bandwidth()); j <= i; ++j)
      if (a.get(i, j) != 0.0) ahat.at(i + 1, j + 1) = a.get(i, j);
  return ahat;
}

}  // namespace

MultistepOperator build_euler(const TimeGrid& grid) {
  grid.validate();
  int n = grid.steps();
  MultistepOperator op;
  op.grid = grid;
  op.rule = TimeRule::euler;
  op.a = BandedMatrix(n, 0, 0);
  for (int i = 0; i < n; ++i) op.a.at(i, i) = 1.0;
  op.ahat = embed_ahat(op.a);
  op.mhat = one_step_matrix(grid);
  return op;
}

MultistepOperator build_bdf2_uniform(const TimeGrid& grid) {
  grid.validate();
  if (!grid.is_uniform())
    throw StructuralError(
        "bdf2 rule is built for uniform grids; use build_custom for "
        "variable steps");
  int n = grid.steps();
  MultistepOperator op;
  op.grid = grid;
  op.rule = TimeRule::bdf2;
  op.a = BandedMatrix(n, 1, 0);
  op.a.at(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    op.a.at(i, i - 1) = -0.5;
    op.a.at(i, i) = 1.5;
  }
  op.ahat = embed_ahat(op.a);
  op.mhat = assemble_mhat(grid, op.ahat);
  return op;
}

MultistepOperator build_custom(const TimeGrid& grid,
                               const std::vector<std::vector<double>>& a_rows) {
  grid.validate();
  int n = grid.steps();
  if (static_cast<int>(a_rows.size()) != n)
    throw StructuralError("custom rule needs one coefficient row per step");
  MultistepOperator op;
  op.grid = grid;
  op.rule = TimeRule::custom;
  op.a = BandedMatrix(n, n > 0 ? n - 1 : 0, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a_rows[i].size()) != i + 1)
      throw StructuralError("custom rule row " + std::to_string(i) +
                            " must have " + std::to_string(i + 1) +
                            " coefficients");
    for (int j = 0; j <= i; ++j) op.a.at(i, j) = a_rows[i][j];
    if (op.a.get(i, i) == 0.0)
      throw StructuralError("custom rule has a zero diagonal at row " +
                            std::to_string(i));
  }
  op.ahat = embed_ahat(op.a);
  op.mhat = assemble_mhat(grid, op.ahat);
  return op;
}

SlotMatrix MultistepOperator::apply_delta(const SlotMatrix& u) const {
  int n = grid.steps();
  if (u.rows != n + 1)
    throw StructuralError("apply_delta: trajectory has wrong slot count");
  SlotMatrix w(u.rows, u.cols);
  for (int k = 0; k <= n; ++k) {
    int jlo = std::max(0, k - mhat.lower_bandwidth());
    for (int j = jlo; j <= k; ++j) {
      double c = mhat.get(k, j);
      if (c == 0.0) continue;
      for (int col = 0; col < u.cols; ++col) w.at(k, col) += c * u.at(j, col);
    }
  }
  return w;
}

SlotMatrix MultistepOperator::transform_test_vector(const SlotMatrix& phi) const {
  int n = grid.steps();
  if (phi.rows != n + 1)
    throw StructuralError("transform_test_vector: wrong slot count");
  SlotMatrix out = phi;
  std::vector<double> col(n + 1);
  for (int c = 0; c < phi.cols; ++c) {
    for (int k = 0; k <= n; ++k) col[k] = phi.at(k, c);
    ahat.solve_lower_transpose(col);
    for (int k = 0; k <= n; ++k) out.at(k, c) = col[k];
  }
  return out;
}

StabilityCheck check_at(const MultistepOperator& op, double c_threshold) {
  StabilityCheck res;
  res.norm1_a_inv = one_norm_inverse_lower(op.a);
  res.pass = res.norm1_a_inv <= c_threshold;
  return res;
}

}  // namespace pmfv
