#pragma once

#include <functional>
#include <limits>
#include <utility>

#include "bpgeom/body.hpp"
#include "bpgeom/measures.hpp"
#include "bpgeom/quadrature.hpp"
#include "bpgeom/zonal.hpp"

namespace bp {

inline constexpr int kDefaultMaxDegree = 48;

// Integral of f over S^{n-1} ∩ xi-perp.
double spherical_radon(const std::function<double(const Vec&)>& f, const Direction& xi,
                       const QuadratureSpec& spec = {});

struct ZonalExpansion {
  ZonalFunction function;
  // max |f(t) - series(t)| on a uniform grid in t.
  double tail_norm;
};

// Even-degree Gegenbauer expansion of an even profile f(t), t = <theta, axis>,
// by Gauss-Gegenbauer quadrature at 4 * max_degree nodes. Throws
// DegreeOverflow when the truncation error exceeds max_tail.
ZonalExpansion expand_zonal(const std::function<double(double)>& f, const Direction& axis, int n,
                            int max_degree = kDefaultMaxDegree,
                            double max_tail = std::numeric_limits<double>::infinity());

// Eigenvalue of the Fourier transform of r^{-p} Y_m(theta) on degree-m
// spherical harmonics: r^{-(n-p)} lambda Y_m.
double fourier_multiplier(int m, double p, int n);

// Sphere restriction g of (r^{-p} f(theta))^, which is r^{-(n-p)} g(theta).
ZonalFunction zonal_fourier(const ZonalFunction& f, double p, int max_degree = kDefaultMaxDegree);

// max over a direction grid of |pi * R f(xi) - zonal_fourier(f, n - 1)(xi)|.
double radon_fourier_consistency(const ZonalFunction& f, int directions = 12, int resolution = 24);

// (||x||_K^{-n+k+1})^(xi) from the parallel section function along xi:
// even k from A^{(k)}(0), odd k from the regularized integral of A.
double fourier_minkowski_power(const RadialBody& body, int k, const Direction& xi, int resolution = 64);

// (|x|^{-p} rho_K(theta)^p)^(xi) = (||x||_K^{-p})^(xi) by the zonal multiplier
// path. Non-zonal bodies are averaged about xi first.
double homogeneous_fourier(const RadialBody& body, double p, const Direction& xi,
                           int max_degree = kDefaultMaxDegree);

// Section volume through the Fourier route:
// (2^{n-1}/pi) (|x|^{-n+1} G(x/|x|))^(xi), G(theta) = int_0^rho r^{n-2}/(1+delta r^2)^{n-1} dr.
double section_volume_via_fourier(const RadialBody& body, CurvatureModel model, const Direction& xi,
                                  int max_degree = kDefaultMaxDegree);

struct ParsevalPair {
  double lhs;
  double rhs;
};

// int_S (||x||_K^{-1})^ (||x||_L^{-n+1})^ dxi  versus  (2 pi)^n int_S rho_K rho_L^{n-1}.
// Both bodies must be zonal about a common axis; n in {3, 4}; p = 1.
ParsevalPair parseval_pairing(const RadialBody& K, const RadialBody& L, double p = 1.0, int nodes = 24);

}  // namespace bp
