#pragma once

#include <vector>

#include "bpgeom/body.hpp"
#include "bpgeom/quadrature.hpp"

namespace bp {

// delta-volume 2^n int_S int_0^rho r^{n-1} / (1 + delta r^2)^n dr dtheta.
// Bodies of revolution are integrated adaptively in the polar angle; other
// bodies use the product sphere rule of `spec`.
double volume(const RadialBody& body, CurvatureModel model, const QuadratureSpec& spec = {});

// delta-volume of the central section by xi-perp,
// 2^{n-1} int_{S ∩ xi-perp} int_0^rho r^{n-2} / (1 + delta r^2)^{n-1} dr du.
double section_volume(const RadialBody& body, CurvatureModel model, const Direction& xi,
                      const QuadratureSpec& spec = {});

// Support point x* maximizing <x, xi> over the body and h(xi) = <x*, xi>.
struct SupportPoint {
  Vec point;
  double value;
};
SupportPoint support_point(const RadialBody& body, const Direction& xi);

// Sampled and locally refined sup of the radial function.
double sup_radial(const RadialBody& body);
double inf_radial(const RadialBody& body);

struct SectionProfile {
  Direction xi;
  std::vector<double> zs;
  std::vector<double> values;
  double z_max;
};

// Euclidean (n-1)-volume A(z) of the slice {<x, xi> = z}. Each slice is
// integrated in polar coordinates about the point (z / h) x*, which lies
// inside any convex body; rays with several boundary crossings raise
// NotStarShapedFromOffset.
class ProfileEvaluator {
 public:
  ProfileEvaluator(const RadialBody& body, const Direction& xi, int resolution = 64);
  double operator()(double z) const;
  double z_max() const { return support_.value; }
  const Direction& xi() const { return xi_; }

 private:
  double boundary_distance(const Vec& center, const Vec& u) const;

  const RadialBody& body_;
  Direction xi_;
  SupportPoint support_;
  int resolution_;
  double reach_;
  bool axial_ = false;      // slices are disks about the axis
  bool zonal_ = false;      // 1-D reduction in the slice plane
  Vec e_, f_;               // zonal reduction frame inside xi-perp
};

SectionProfile parallel_section_profile(const RadialBody& body, const Direction& xi,
                                        const std::vector<double>& zs, int resolution = 64);

// Symmetric stencil z_j = j * h / 2, j = -8..8, with h = 0.01 z_max.
SectionProfile derivative_stencil_profile(const RadialBody& body, const Direction& xi, int resolution = 64);

// A^{(k)}(0), k <= 4, by fourth-order central differences at spacings h
// and h/2 with Richardson extrapolation. Odd orders return exactly 0.
double profile_derivative_at_zero(const SectionProfile& profile, int k);

}  // namespace bp
