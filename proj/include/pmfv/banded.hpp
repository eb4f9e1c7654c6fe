#pragma once

// Square banded matrices with kl sub- and ku super-diagonals. Row-major band
// storage: entry (i,j), |j-i| inside the band, lives at
// data[i*(kl+ku+1) + (j-i+kl)]. Covers the lower-triangular time
// differentiation matrices (ku = 0) and the TPFA Jacobians (kl = ku =
// mesh bandwidth) with the same factor/solve code.

#include <cstddef>
#include <vector>

namespace pmfv {

class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  double& at(int i, int j);        // must be inside the band
  double get(int i, int j) const;  // 0 outside the band

  void clear();

  std::vector<double> multiply(const std::vector<double>& x) const;

  // In-place LU without pivoting. Safe for strictly column diagonally
  // dominant matrices (the TPFA Jacobians are) and for triangular ones.
  // Throws StructuralError on a zero pivot.
  void lu_factor();
  // Solve with the factors from lu_factor (overwrites b with the solution).
  void lu_solve(std::vector<double>& b) const;

  // Unfactored triangular solves (require ku == 0 and nonzero diagonal).
  void solve_lower(std::vector<double>& b) const;
  void solve_lower_transpose(std::vector<double>& b) const;

 private:
  int n_ = 0, kl_ = 0, ku_ = 0, width_ = 0;
  std::vector<double> a_;
};

// C = A * B with widened bands (capped at n-1).
BandedMatrix band_multiply(const BandedMatrix& a, const BandedMatrix& b);

// Exact matrix 1-norm of the inverse of a lower-triangular banded matrix,
// computed by forward substitution on every unit basis column.
double one_norm_inverse_lower(const BandedMatrix& a);

// Preconditioned BiCGStab with Jacobi (diagonal) preconditioning.
// Returns the number of iterations taken, or -1 on breakdown/stall.
int bicgstab(const BandedMatrix& a, const std::vector<double>& b,
             std::vector<double>& x, double rel_tol, int max_iter);

}  // namespace pmfv
