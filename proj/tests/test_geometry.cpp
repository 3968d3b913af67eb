#include <algorithm>
#include <cmath>
#include <random>

#include "bpgeom/error.hpp"
#include "bpgeom/geometry.hpp"
#include "doctest.h"

using namespace bp;

namespace {

Vec random_point(std::mt19937_64& rng, int n, double rmax) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.05, rmax);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return (u(rng) / norm(v)) * v;
}

double dist_h(const Vec& p, const Vec& q) {
  const Vec d = p - q;
  return std::acosh(1.0 + 2.0 * dot(d, d) / ((1.0 - dot(p, p)) * (1.0 - dot(q, q))));
}

// Lift to the unit sphere in R^{n+1} by inverse stereographic projection.
std::vector<double> lift(const Vec& x) {
  const double s = dot(x, x);
  std::vector<double> y;
  for (int i = 0; i < x.dim(); ++i) y.push_back(2.0 * x[i] / (1.0 + s));
  y.push_back((1.0 - s) / (1.0 + s));
  return y;
}

double angle(const std::vector<double>& a, const std::vector<double>& b) {
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) c += a[i] * b[i];
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("geodesic endpoints are exact") {
  std::mt19937_64 rng(1);
  for (int delta = -1; delta <= 1; ++delta) {
    const auto p = random_point(rng, 3, 0.9), q = random_point(rng, 3, 0.9);
    const GeodesicSpec spec{p, q, CurvatureModel::from_delta(delta)};
    CHECK(norm(geodesic_point(spec, 0.0) - p) == 0.0);
    CHECK(norm(geodesic_point(spec, 1.0) - q) == 0.0);
  }
}

TEST_CASE("hyperbolic geodesics are distance-additive") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_point(rng, 4, 0.95), q = random_point(rng, 4, 0.95);
    const GeodesicSpec spec{p, q, CurvatureModel::hyperbolic()};
    const double total = dist_h(p, q);
    for (double t : {0.2, 0.5, 0.9}) {
      const auto x = geodesic_point(spec, t);
      CHECK(dist_h(p, x) + dist_h(x, q) == doctest::Approx(total).epsilon(1e-9));
    }
  }
}

TEST_CASE("spherical geodesics lift to great-circle arcs") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_point(rng, 3, 0.95), q = random_point(rng, 3, 0.95);
    const GeodesicSpec spec{p, q, CurvatureModel::spherical()};
    const double total = angle(lift(p), lift(q));
    for (double t : {0.1, 0.5, 0.7}) {
      const auto x = lift(geodesic_point(spec, t));
      CHECK(angle(lift(p), x) + angle(x, lift(q)) == doctest::Approx(total).epsilon(1e-9));
    }
  }
}

TEST_CASE("geodesic circles satisfy the orthogonality and antipodality conditions") {
  std::mt19937_64 rng(4);
  for (int delta : {-1, 1}) {
    for (int i = 0; i < 20; ++i) {
      const GeodesicSpec spec{random_point(rng, 3, 0.9), random_point(rng, 3, 0.9), CurvatureModel::from_delta(delta)};
      const auto c = geodesic_circle(spec);
      if (c.straight) continue;
      const double c2 = c.cx * c.cx + c.cy * c.cy;
      CHECK(c.radius * c.radius == doctest::Approx(c2 + delta).epsilon(1e-10));
    }
  }
}

TEST_CASE("collinear endpoints give straight segments") {
  const GeodesicSpec spec{Vec{0.1, 0.2, 0.0}, Vec{-0.3, -0.6, 0.0}, CurvatureModel::hyperbolic()};
  CHECK(geodesic_circle(spec).straight);
  const auto x = geodesic_point(spec, 0.25);
  CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("geodesic preconditions") {
  const auto code = [](const GeodesicSpec& s) {
    try {
      geodesic_point(s, 0.5);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code({Vec{0.5, 0.0}, Vec{-2.0, 0.0}, CurvatureModel::spherical()}) == ErrorCode::AntipodalPair);
  CHECK(code({Vec{0.5, 0.0}, Vec{0.0, 1.2}, CurvatureModel::hyperbolic()}) == ErrorCode::PointOutsideModel);
}

TEST_CASE("curvature maps send geodesics to straight lines") {
  // Circle r^2 - sigma a r cos(phi) + ... ; with a = 2.5 both images are x = 0.4.
  const double a = 2.5;
  for (int k = -20; k <= 20; ++k) {
    const double phi = 0.06 * k;
    const double c = std::cos(phi);
    // h-geodesic r^2 - a r cos(phi) + 1 = 0, inner root.
    const double rh = 0.5 * (a * c - std::sqrt(a * a * c * c - 4.0));
    if (a * c > 2.0) CHECK(curvature_radial(rh, 1) * c == doctest::Approx(0.4).epsilon(1e-10));
    // s-geodesic r^2 + a r cos(phi) - 1 = 0, positive root, mapped by r / (1 - r^2).
    const double rs = 0.5 * (-a * c + std::sqrt(a * a * c * c + 4.0));
    CHECK(curvature_radial(rs, -1) * c == doctest::Approx(0.4).epsilon(1e-10));
  }
}

TEST_CASE("curvature map round trip and pointwise formula") {
  const auto E = RadialBody::ellipsoid(Vec{0.3, 0.5, 0.6});
  for (int sigma : {-1, 1}) {
    const auto M = curvature_map(E, sigma);
    const auto back = inverse_curvature_map(M, sigma);
    for (const Vec& t : {Vec{1.0, 0.0, 0.0}, Vec{0.0, 0.6, 0.8}, Vec{0.48, 0.6, 0.64}}) {
      const double r = E.radial(t);
      CHECK(M.radial(t) == doctest::Approx(r / (1.0 + sigma * r * r)).epsilon(1e-12));
      CHECK(back.radial(t) == doctest::Approx(r).epsilon(1e-12));
    }
  }
}

TEST_CASE("image of the cylinder is bounded by a hyperbola of revolution") {
  const auto M = curvature_map(RadialBody::cylinder_caps(3, 0.5, 0.02), -1);
  // Lateral points away from the smoothed rim at atan(sqrt2) ~ 0.955.
  for (double phi = 1.05; phi <= M_PI / 2 + 1e-12; phi += 0.05) {
    const double r = M.radial(Vec{std::cos(phi), std::sin(phi), 0.0});
    const double X = r * std::cos(phi), Y = r * std::sin(phi);
    CHECK(Y == doctest::Approx((std::sqrt(2.0) + std::sqrt(2.0 + 4.0 * X * X)) / 2.0).epsilon(1e-8));
  }
}

TEST_CASE("convexity flags follow the implication chain") {
  ConvexitySpec spec;
  spec.pairs = 300;
  spec.points = 24;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.2, 0.6);
  for (int i = 0; i < 8; ++i) {
    const auto K = RadialBody::ellipsoid(Vec{u(rng), u(rng), u(rng)});
    const auto v = classify_convexity(K, spec);
    if (v.s_convex() == ConvexFlag::yes) CHECK(v.e_convex() == ConvexFlag::yes);
    if (v.e_convex() == ConvexFlag::yes) CHECK(v.h_convex() == ConvexFlag::yes);
  }
}

TEST_CASE("cylinder with caps is e- and h-convex but not s-convex") {
  const auto L = RadialBody::cylinder_caps(3, 0.5, 0.02);
  const auto v = classify_convexity(L);
  CHECK(v.e_convex() == ConvexFlag::yes);
  CHECK(v.h_convex() == ConvexFlag::yes);
  REQUIRE(v.s_convex() == ConvexFlag::no);
  const auto& w = v.witness(CurvatureModel::spherical());
  REQUIRE(w.has_value());
  const auto x = geodesic_point({w->p, w->q, CurvatureModel::spherical()}, w->t);
  CHECK(L.gauge(x) > 1.0 + 1e-9);
  CHECK(L.gauge(w->p) <= 1.0 + 1e-12);
  CHECK(L.gauge(w->q) <= 1.0 + 1e-12);
  // The witness lies on the great circle through the lifted endpoints.
  const auto P = lift(w->p), Q = lift(w->q), X = lift(x);
  CHECK(angle(P, X) + angle(X, Q) == doctest::Approx(angle(P, Q)).epsilon(1e-9));
}

TEST_CASE("flags are undefined outside the model") {
  const auto v = classify_convexity(RadialBody::ball(3, 1.2));
  CHECK(v.e_convex() == ConvexFlag::yes);
  CHECK(v.h_convex() == ConvexFlag::undefined);
  CHECK(v.s_convex() == ConvexFlag::undefined);
}

}  // TEST_SUITE
