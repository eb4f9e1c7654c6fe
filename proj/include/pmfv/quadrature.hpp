#pragma once

// Tensor 3-point Gauss rule on axis-aligned boxes; exact through degree 5
// per axis, comfortably above the degree-4 exactness the projection
// identities are tested at.

#include <array>
#include <cmath>

namespace pmfv {

inline constexpr std::array<double, 3> kGaussNode = {
    -0.77459666924148337704, 0.0, 0.77459666924148337704};
inline constexpr std::array<double, 3> kGaussWeight = {
    5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

// Integral of f over the box ({xmin,xmax,ymin,ymax}; y slots ignored in 1d).
template <typename F>
double integrate_box(const std::array<double, 4>& box, int dim, F&& f) {
  double cx = 0.5 * (box[0] + box[1]), hx = 0.5 * (box[1] - box[0]);
  if (dim == 1) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      s += kGaussWeight[i] * f(cx + hx * kGaussNode[i], 0.0);
    return s * hx;
  }
  double cy = 0.5 * (box[2] + box[3]), hy = 0.5 * (box[3] - box[2]);
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += kGaussWeight[i] * kGaussWeight[j] *
           f(cx + hx * kGaussNode[i], cy + hy * kGaussNode[j]);
  return s * hx * hy;
}

template <typename F>
double box_average(const std::array<double, 4>& box, int dim, F&& f) {
  double vol = box[1] - box[0];
  if (dim == 2) vol *= box[3] - box[2];
  return integrate_box(box, dim, f) / vol;
}

}  // namespace pmfv
