#include "pmfv/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmfv/errors.hpp"

namespace pmfv {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n),
      kl_(std::min(kl, n > 0 ? n - 1 : 0)),
      ku_(std::min(ku, n > 0 ? n - 1 : 0)),
      width_(kl_ + ku_ + 1),
      a_(static_cast<std::size_t>(n) * width_, 0.0) {}

double& BandedMatrix::at(int i, int j) {
  return a_[static_cast<std::size_t>(i) * width_ + (j - i + kl_)];
}

double BandedMatrix::get(int i, int j) const {
  if (j - i > ku_ || i - j > kl_) return 0.0;
  return a_[static_cast<std::size_t>(i) * width_ + (j - i + kl_)];
}

void BandedMatrix::clear() { std::fill(a_.begin(), a_.end(), 0.0); }

std::vector<double> BandedMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    int jlo = std::max(0, i - kl_), jhi = std::min(n_ - 1, i + ku_);
    for (int j = jlo; j <= jhi; ++j) s += get(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

void BandedMatrix::lu_factor() {
  for (int k = 0; k < n_; ++k) {
    double piv = get(k, k);
    if (piv == 0.0)
      throw StructuralError("banded LU: zero pivot at row " +
                            std::to_string(k));
    int ilo = k + 1, ihi = std::min(n_ - 1, k + kl_);
    for (int i = ilo; i <= ihi; ++i) {
      double lik = get(i, k) / piv;
      at(i, k) = lik;
      if (lik == 0.0) continue;
      int jhi = std::min(n_ - 1, k + ku_);
      for (int j = k + 1; j <= jhi; ++j) at(i, j) -= lik * get(k, j);
    }
  }
}

void BandedMatrix::lu_solve(std::vector<double>& b) const {
  for (int i = 0; i < n_; ++i) {
    double s = b[i];
    int jlo = std::max(0, i - kl_);
    for (int j = jlo; j < i; ++j) s -= get(i, j) * b[j];
    b[i] = s;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = b[i];
    int jhi = std::min(n_ - 1, i + ku_);
    for (int j = i + 1; j <= jhi; ++j) s -= get(i, j) * b[j];
    b[i] = s / get(i, i);
  }
}

void BandedMatrix::solve_lower(std::vector<double>& b) const {
  for (int i = 0; i < n_; ++i) {
    double s = b[i];
    int jlo = std::max(0, i - kl_);
    for (int j = jlo; j < i; ++j) s -= get(i, j) * b[j];
    double d = get(i, i);
    if (d == 0.0)
      throw StructuralError("triangular solve: zero diagonal at row " +
                            std::to_string(i));
    b[i] = s / d;
  }
}

void BandedMatrix::solve_lower_transpose(std::vector<double>& b) const {
  for (int i = n_ - 1; i >= 0; --i) {
    double s = b[i];
    int jhi = std::min(n_ - 1, i + kl_);
    for (int j = i + 1; j <= jhi; ++j) s -= get(j, i) * b[j];
    double d = get(i, i);
    if (d == 0.0)
      throw StructuralError("triangular solve: zero diagonal at row " +
                            std::to_string(i));
    b[i] = s / d;
  }
}

BandedMatrix band_multiply(const BandedMatrix& a, const BandedMatrix& b) {
  int n = a.size();
  BandedMatrix c(n, a.lower_bandwidth() + b.lower_bandwidth(),
                 a.upper_bandwidth() + b.upper_bandwidth());
  for (int i = 0; i < n; ++i) {
    int klo = std::max(0, i - a.lower_bandwidth());
    int khi = std::min(n - 1, i + a.upper_bandwidth());
    for (int k = klo; k <= khi; ++k) {
      double aik = a.get(i, k);
      if (aik == 0.0) continue;
      int jlo = std::max(0, k - b.lower_bandwidth());
      int jhi = std::min(n - 1, k + b.upper_bandwidth());
      for (int j = jlo; j <= jhi; ++j) {
        double bkj = b.get(k, j);
        if (bkj != 0.0) c.at(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

double one_norm_inverse_lower(const BandedMatrix& a) {
  int n = a.size();
  double norm = 0.0;
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    a.solve_lower(col);
    double s = 0.0;
    for (int i = j; i < n; ++i) s += std::abs(col[i]);
    norm = std::max(norm, s);
  }
  return norm;
}

int bicgstab(const BandedMatrix& a, const std::vector<double>& b,
             std::vector<double>& x, double rel_tol, int max_iter) {
  const int n = a.size();
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) {
    double d = a.get(i, i);
    diag[i] = d != 0.0 ? 1.0 / d : 1.0;
  }
  x.assign(n, 0.0);
  std::vector<double> r = b;
  std::vector<double> r0 = r, p(n, 0.0), v(n, 0.0), s(n), t(n), y(n), z(n);
  auto dot = [n](const std::vector<double>& u, const std::vector<double>& w) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) d += u[i] * w[i];
    return d;
  };
  double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) return 0;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (int it = 1; it <= max_iter; ++it) {
    double rho1 = dot(r0, r);
    if (rho1 == 0.0) return -1;
    if (it == 1) {
      p = r;
    } else {
      double beta = (rho1 / rho) * (alpha / omega);
      for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    rho = rho1;
    for (int i = 0; i < n; ++i) y[i] = diag[i] * p[i];
    v = a.multiply(y);
    double r0v = dot(r0, v);
    if (r0v == 0.0) return -1;
    alpha = rho / r0v;
    for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (std::sqrt(dot(s, s)) <= rel_tol * bnorm) {
      for (int i = 0; i < n; ++i) x[i] += alpha * y[i];
      return it;
    }
    for (int i = 0; i < n; ++i) z[i] = diag[i] * s[i];
    t = a.multiply(z);
    double tt = dot(t, t);
    if (tt == 0.0) return -1;
    omega = dot(t, s) / tt;
    for (int i = 0; i < n; ++i) x[i] += alpha * y[i] + omega * z[i];
    for (int i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
    if (std::sqrt(dot(r, r)) <= rel_tol * bnorm) return it;
    if (omega == 0.0) return -1;
  }
  return -1;
}

}  // namespace pmfv
