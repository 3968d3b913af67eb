#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace bp {

inline constexpr int kMaxDim = 5;

// Fixed-capacity coordinate vector; every point or direction in this
// library lives in R^n with n <= kMaxDim, so no heap allocation is needed.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int n);
  Vec(std::initializer_list<double> xs);
  explicit Vec(std::span<const double> xs);

  static Vec unit(int n, int i);

  int dim() const { return n_; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const {
    return {c_.data(), static_cast<std::size_t>(n_)};
  }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double s);

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

 private:
  std::array<double, kMaxDim> c_{};
  int n_ = 0;
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
std::string to_string(const Vec& v);

// Unit vector in R^n. Construction from raw coordinates requires
// |coords| = 1 within 1e-12; use Direction::normalize for arbitrary input.
class Direction {
 public:
  explicit Direction(const Vec& v);
  static Direction normalize(const Vec& v);
  static Direction axis(int n, int i) { return Direction(Vec::unit(n, i)); }

  int dim() const { return v_.dim(); }
  double operator[](int i) const { return v_[i]; }
  const Vec& vec() const { return v_; }
  Direction operator-() const;

 private:
  struct Trusted {};
  Direction(const Vec& v, Trusted) : v_(v) {}
  Vec v_;
};

// Orthonormal completion: n-1 unit vectors spanning xi-perp, chosen
// deterministically (Householder reflection of the standard basis).
std::array<Vec, kMaxDim> orthonormal_complement(const Direction& xi);

// A unit vector orthogonal to `axis` lying in span(axis, hint); falls back to
// the first complement vector when hint is parallel to axis.
Vec perpendicular_in_plane(const Direction& axis, const Vec& hint);

// Curvature sign of the ball model: -1 hyperbolic, 0 Euclidean, +1 spherical.
class CurvatureModel {
 public:
  static CurvatureModel from_delta(int delta);
  // 'h', 'e' or 's'.
  static CurvatureModel from_letter(char letter);
  static CurvatureModel hyperbolic() { return CurvatureModel(-1); }
  static CurvatureModel euclidean() { return CurvatureModel(0); }
  static CurvatureModel spherical() { return CurvatureModel(1); }

  int delta() const { return delta_; }
  char letter() const;
  bool operator==(const CurvatureModel&) const = default;

 private:
  explicit CurvatureModel(int d) : delta_(d) {}
  int delta_;
};

}  // namespace bp
