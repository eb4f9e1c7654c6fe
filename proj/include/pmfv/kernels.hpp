#pragma once

// Data-parallel inner loops of the scheme: nonlinearity maps, TPFA residual
// and Jacobian assembly, and the cell/interface reductions behind every norm
// and monitor. Each kernel exists twice: a plain serial reference
// (kernels::serial) and an OpenMP version (kernels::par). The parallel
// reductions fill a per-entity buffer concurrently and accumulate it
// serially in index order, so both variants produce bit-identical results
// at any thread count; the unqualified wrappers dispatch on the module-wide
// execution mode.

#include <functional>
#include <vector>

#include "pmfv/banded.hpp"
#include "pmfv/mesh.hpp"

namespace pmfv::kernels {

enum class Exec { serial, parallel };

Exec exec_mode();
void set_exec_mode(Exec mode);

using PointFn = std::function<double(double, double)>;

namespace serial {

void power_map(const std::vector<double>& u, double q, double (*fn)(double, double),
               std::vector<double>& out);

// F_K = coef_K u_K - rhs_K + sum_L tau_KL (w_K - w_L)
void tpfa_residual(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& rhs, const std::vector<double>& u,
                   const std::vector<double>& w, std::vector<double>& out);

// J = diag(coef) + TPFA coupling linearized at w' (J_KK += w'_K sum tau,
// J_KL = -tau w'_L).
void tpfa_jacobian(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& wprime, BandedMatrix& out);

double cell_weighted_sumsq(const std::vector<double>& weights,
                           const std::vector<double>& v);
double cell_weighted_dot(const std::vector<double>& weights,
                         const std::vector<double>& u,
                         const std::vector<double>& v);
double cell_weighted_abs_pow(const std::vector<double>& weights,
                             const std::vector<double>& v, double p);

double iface_tau_diff_sumsq(const AdmissibleMesh& mesh,
                            const std::vector<double>& w);
double iface_tau_diff_dot(const AdmissibleMesh& mesh,
                          const std::vector<double>& w,
                          const std::vector<double>& g);
double iface_measure_absdiff(const AdmissibleMesh& mesh,
                             const std::vector<double>& w);
// sum over diamonds of meas(D_KL) * |d (w_K-w_L)/dist|^p
double iface_grad_pow(const AdmissibleMesh& mesh, const std::vector<double>& w,
                      double p);
double iface_grad_linf(const AdmissibleMesh& mesh, const std::vector<double>& w);

void cell_averages(const AdmissibleMesh& mesh, const PointFn& f,
                   std::vector<double>& out);
double quad_error_sq(const AdmissibleMesh& mesh, const std::vector<double>& v,
                     const PointFn& f);
double quad_error_abs(const AdmissibleMesh& mesh, const std::vector<double>& v,
                      const PointFn& f);

}  // namespace serial

namespace par {

void power_map(const std::vector<double>& u, double q, double (*fn)(double, double),
               std::vector<double>& out);
void tpfa_residual(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& rhs, const std::vector<double>& u,
                   const std::vector<double>& w, std::vector<double>& out);
void tpfa_jacobian(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& wprime, BandedMatrix& out);
double cell_weighted_sumsq(const std::vector<double>& weights,
                           const std::vector<double>& v);
double cell_weighted_dot(const std::vector<double>& weights,
                         const std::vector<double>& u,
                         const std::vector<double>& v);
double cell_weighted_abs_pow(const std::vector<double>& weights,
                             const std::vector<double>& v, double p);
double iface_tau_diff_sumsq(const AdmissibleMesh& mesh,
                            const std::vector<double>& w);
double iface_tau_diff_dot(const AdmissibleMesh& mesh,
                          const std::vector<double>& w,
                          const std::vector<double>& g);
double iface_measure_absdiff(const AdmissibleMesh& mesh,
                             const std::vector<double>& w);
double iface_grad_pow(const AdmissibleMesh& mesh, const std::vector<double>& w,
                      double p);
double iface_grad_linf(const AdmissibleMesh& mesh, const std::vector<double>& w);
void cell_averages(const AdmissibleMesh& mesh, const PointFn& f,
                   std::vector<double>& out);
double quad_error_sq(const AdmissibleMesh& mesh, const std::vector<double>& v,
                     const PointFn& f);
double quad_error_abs(const AdmissibleMesh& mesh, const std::vector<double>& v,
                      const PointFn& f);

}  // namespace par

// Dispatching wrappers.
void power_map(const std::vector<double>& u, double q, double (*fn)(double, double),
               std::vector<double>& out);
void tpfa_residual(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& rhs, const std::vector<double>& u,
                   const std::vector<double>& w, std::vector<double>& out);
void tpfa_jacobian(const AdmissibleMesh& mesh, const std::vector<double>& coef,
                   const std::vector<double>& wprime, BandedMatrix& out);
double cell_weighted_sumsq(const std::vector<double>& weights,
                           const std::vector<double>& v);
double cell_weighted_dot(const std::vector<double>& weights,
                         const std::vector<double>& u,
                         const std::vector<double>& v);
double cell_weighted_abs_pow(const std::vector<double>& weights,
                             const std::vector<double>& v, double p);
double iface_tau_diff_sumsq(const AdmissibleMesh& mesh,
                            const std::vector<double>& w);
double iface_tau_diff_dot(const AdmissibleMesh& mesh,
                          const std::vector<double>& w,
                          const std::vector<double>& g);
double iface_measure_absdiff(const AdmissibleMesh& mesh,
                             const std::vector<double>& w);
double iface_grad_pow(const AdmissibleMesh& mesh, const std::vector<double>& w,
                      double p);
double iface_grad_linf(const AdmissibleMesh& mesh, const std::vector<double>& w);
void cell_averages(const AdmissibleMesh& mesh, const PointFn& f,
                   std::vector<double>& out);
double quad_error_sq(const AdmissibleMesh& mesh, const std::vector<double>& v,
                     const PointFn& f);
double quad_error_abs(const AdmissibleMesh& mesh, const std::vector<double>& v,
                      const PointFn& f);

}  // namespace pmfv::kernels
