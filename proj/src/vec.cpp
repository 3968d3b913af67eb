#include "bpgeom/vec.hpp"

#include <sstream>

#include "bpgeom/error.hpp"

namespace bp {

Vec::Vec(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) {
    fail(ErrorCode::UnsupportedDimension, "dimension " + std::to_string(n) + " outside [1, 5]");
  }
}

Vec::Vec(std::initializer_list<double> xs) : Vec(static_cast<int>(xs.size())) {
  int i = 0;
  for (double x : xs) c_[static_cast<std::size_t>(i++)] = x;
}

Vec::Vec(std::span<const double> xs) : Vec(static_cast<int>(xs.size())) {
  for (std::size_t i = 0; i < xs.size(); ++i) c_[i] = xs[i];
}

Vec Vec::unit(int n, int i) {
  Vec v(n);
  v[i] = 1.0;
  return v;
}

Vec& Vec::operator+=(const Vec& o) {
  for (int i = 0; i < n_; ++i) (*this)[i] += o[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  for (int i = 0; i < n_; ++i) (*this)[i] -= o[i];
  return *this;
}

Vec& Vec::operator*=(double s) {
  for (int i = 0; i < n_; ++i) (*this)[i] *= s;
  return *this;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os.precision(6);
  os << '(';
  for (int i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

Direction::Direction(const Vec& v) : v_(v) {
  if (v.dim() < 1) fail(ErrorCode::InvalidArgument, "empty direction");
  if (std::abs(norm(v) - 1.0) > 1e-12) {
    fail(ErrorCode::InvalidArgument, "direction " + to_string(v) + " is not a unit vector");
  }
}

Direction Direction::normalize(const Vec& v) {
  const double r = norm(v);
  if (!(r > 0.0) || !std::isfinite(r)) {
    fail(ErrorCode::InvalidArgument, "cannot normalize " + to_string(v));
  }
  return Direction(v * (1.0 / r), Trusted{});
}

Direction Direction::operator-() const { return Direction(-v_, Trusted{}); }

std::array<Vec, kMaxDim> orthonormal_complement(const Direction& xi) {
  const int n = xi.dim();
  // Householder H maps e_k to xi, with k the largest |xi_k|; columns of H
  // other than k are then an orthonormal basis of xi-perp.
  int k = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(xi[i]) > std::abs(xi[k])) k = i;
  }
  Vec w = xi.vec() - Vec::unit(n, k);
  const double ww = dot(w, w);
  std::array<Vec, kMaxDim> out{};
  int m = 0;
  for (int j = 0; j < n; ++j) {
    if (j == k) continue;
    Vec col = Vec::unit(n, j);
    if (ww > 0.0) col -= w * (2.0 * w[j] / ww);
    out[static_cast<std::size_t>(m++)] = col;
  }
  return out;
}

Vec perpendicular_in_plane(const Direction& axis, const Vec& hint) {
  Vec p = hint - axis.vec() * dot(hint, axis.vec());
  const double r = norm(p);
  if (r > 1e-14 * std::max(1.0, norm(hint))) return p * (1.0 / r);
  return orthonormal_complement(axis)[0];
}

CurvatureModel CurvatureModel::from_delta(int delta) {
  if (delta < -1 || delta > 1) {
    fail(ErrorCode::InvalidArgument, "curvature sign must be -1, 0 or +1");
  }
  return CurvatureModel(delta);
}

CurvatureModel CurvatureModel::from_letter(char letter) {
  switch (letter) {
    case 'h': return hyperbolic();
    case 'e': return euclidean();
    case 's': return spherical();
    default: fail(ErrorCode::InvalidArgument, std::string("unknown model '") + letter + "' (expected h, e or s)");
  }
}

char CurvatureModel::letter() const {
  return delta_ < 0 ? 'h' : (delta_ == 0 ? 'e' : 's');
}

}  // namespace bp
