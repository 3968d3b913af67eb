#include "bpgeom/zonal.hpp"

#include <cmath>

#include "bpgeom/error.hpp"

namespace bp {

double gegenbauer(int m, double lambda, double t) {
  if (m == 0) return 1.0;
  double c0 = 1.0;
  double c1 = 2.0 * lambda * t;
  for (int k = 2; k <= m; ++k) {
    const double c2 = (2.0 * t * (k + lambda - 1.0) * c1 - (k + 2.0 * lambda - 2.0) * c0) / k;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

void gegenbauer_all(int mmax, double lambda, double t, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(mmax) + 1);
  out[0] = 1.0;
  if (mmax == 0) return;
  out[1] = 2.0 * lambda * t;
  for (int k = 2; k <= mmax; ++k) {
    out[static_cast<std::size_t>(k)] =
        (2.0 * t * (k + lambda - 1.0) * out[static_cast<std::size_t>(k - 1)] -
         (k + 2.0 * lambda - 2.0) * out[static_cast<std::size_t>(k - 2)]) / k;
  }
}

double gegenbauer_at_one(int m, double lambda) {
  return std::exp(std::lgamma(m + 2.0 * lambda) - std::lgamma(m + 1.0) - std::lgamma(2.0 * lambda));
}

double gegenbauer_norm2(int m, double lambda) {
  const double log_h = std::log(M_PI) + (1.0 - 2.0 * lambda) * std::log(2.0) +
                       std::lgamma(m + 2.0 * lambda) - std::lgamma(m + 1.0) -
                       2.0 * std::lgamma(lambda);
  return std::exp(log_h) / (m + lambda);
}

ZonalFunction::ZonalFunction(Direction axis, int n, std::vector<double> even_coeffs)
    : axis_(std::move(axis)), n_(n), coeffs_(std::move(even_coeffs)) {
  if (n < 3 || n > kMaxDim) {
    fail(ErrorCode::UnsupportedDimension, "zonal functions need 3 <= n <= 5");
  }
  if (axis_.dim() != n) fail(ErrorCode::DimensionMismatch, "zonal axis dimension mismatch");
}

double ZonalFunction::at(double t) const {
  // Clenshaw would be marginally faster; the direct recurrence keeps the
  // exact even symmetry by working on |t|.
  t = std::min(1.0, std::abs(t));
  const double lam = lambda();
  const int mmax = degree();
  double c0 = 1.0;
  double c1 = 2.0 * lam * t;
  double sum = coeffs_.empty() ? 0.0 : coeffs_[0];
  for (int k = 2; k <= mmax; ++k) {
    const double c2 = (2.0 * t * (k + lam - 1.0) * c1 - (k + 2.0 * lam - 2.0) * c0) / k;
    c0 = c1;
    c1 = c2;
    if (k % 2 == 0) sum += coeffs_[static_cast<std::size_t>(k / 2)] * c2;
  }
  return sum;
}

double ZonalFunction::operator()(const Vec& theta) const {
  if (theta.dim() != n_) fail(ErrorCode::DimensionMismatch, "zonal function evaluated in wrong dimension");
  return at(dot(theta, axis_.vec()));
}

ZonalFunction ZonalFunction::scaled(double s) const {
  std::vector<double> c = coeffs_;
  for (double& x : c) x *= s;
  return ZonalFunction(axis_, n_, std::move(c));
}

}  // namespace bp
