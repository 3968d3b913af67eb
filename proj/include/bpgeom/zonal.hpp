#pragma once

#include <vector>

#include "bpgeom/vec.hpp"

namespace bp {

// Gegenbauer polynomial C_m^lambda(t), lambda > 0, by three-term recurrence.
double gegenbauer(int m, double lambda, double t);
// C_0 .. C_mmax at t, written to out[0..mmax].
void gegenbauer_all(int mmax, double lambda, double t, std::vector<double>& out);
// C_m^lambda(1) = Gamma(m + 2 lambda) / (m! Gamma(2 lambda)).
double gegenbauer_at_one(int m, double lambda);
// Squared L2 norm of C_m^lambda under the weight (1 - t^2)^(lambda - 1/2).
double gegenbauer_norm2(int m, double lambda);

// Even sphere function invariant under rotations about `axis`, stored as
//   f(theta) = sum_j coeffs[j] * C_{2j}^{(n-2)/2}(<theta, axis>).
// Only even degrees are representable, so f(theta) == f(-theta) exactly.
class ZonalFunction {
 public:
  ZonalFunction(Direction axis, int n, std::vector<double> even_coeffs);

  int dim() const { return n_; }
  double lambda() const { return 0.5 * (n_ - 2); }
  const Direction& axis() const { return axis_; }
  // Coefficient of degree 2j at index j.
  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return coeffs_.empty() ? 0 : 2 * (static_cast<int>(coeffs_.size()) - 1); }

  // t is the cosine of the angle to the axis.
  double at(double t) const;
  double operator()(const Vec& theta) const;

  ZonalFunction scaled(double s) const;

 private:
  Direction axis_;
  int n_;
  std::vector<double> coeffs_;
};

}  // namespace bp
