#include <cmath>
#include <random>

#include "bpgeom/error.hpp"
#include "bpgeom/geometry.hpp"
#include "bpgeom/measures.hpp"
#include "doctest.h"

using namespace bp;

namespace {

double ball_volume(int n) { return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

// Simpson's rule, used as an oracle independent of the library quadrature.
template <class F>
double simpson(F f, double a, double b, int m = 20000) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

const auto e = CurvatureModel::euclidean();
const auto h = CurvatureModel::hyperbolic();
const auto s = CurvatureModel::spherical();

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("Euclidean volume is 2^n times the Lebesgue volume") {
  CHECK(volume(RadialBody::ball(3, 1.0), e) == doctest::Approx(32.0 * M_PI / 3.0).epsilon(1e-8));
  for (int n = 2; n <= 5; ++n) {
    CHECK(volume(RadialBody::ball(n, 0.7), e) ==
          doctest::Approx(std::pow(2.0, n) * ball_volume(n) * std::pow(0.7, n)).epsilon(1e-10));
  }
}

TEST_CASE("non-zonal ellipsoid volume via the product rule") {
  const Vec a{0.3, 0.45, 0.6, 0.5};
  const double exact = 16.0 * ball_volume(4) * 0.3 * 0.45 * 0.6 * 0.5;
  CHECK(volume(RadialBody::ellipsoid(a), e) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("geodesic balls in the curved models") {
  // Hemisphere of the sphere model: area 2 pi.
  CHECK(std::abs(volume(RadialBody::ball(2, 1.0 - 1e-12), s) - 2.0 * M_PI) < 1e-5);
  // Ball of geodesic radius 1 in the hyperbolic plane: 2 pi (cosh 1 - 1).
  CHECK(volume(RadialBody::ball(2, std::tanh(0.5)), h) ==
        doctest::Approx(2.0 * M_PI * (std::cosh(1.0) - 1.0)).epsilon(1e-8));
  // n = 3, geodesic radius R = 2 atanh(rho): pi (sinh 2R - 2R) and pi (2R - sin 2R).
  for (double rho : {0.2, 0.5, 0.8}) {
    const double Rh = 2.0 * std::atanh(rho);
    const double Rs = 2.0 * std::atan(rho);
    CHECK(volume(RadialBody::ball(3, rho), h) == doctest::Approx(M_PI * (std::sinh(2 * Rh) - 2 * Rh)).epsilon(1e-9));
    CHECK(volume(RadialBody::ball(3, rho), s) == doctest::Approx(M_PI * (2 * Rs - std::sin(2 * Rs))).epsilon(1e-9));
  }
  // n = 5 by quadrature of sinh^4 and sin^4.
  const double area5 = 8.0 * M_PI * M_PI / 3.0;
  const double R = 2.0 * std::atanh(0.6);
  CHECK(volume(RadialBody::ball(5, 0.6), h) ==
        doctest::Approx(area5 * simpson([](double t) { return std::pow(std::sinh(t), 4); }, 0.0, R)).epsilon(1e-9));
}

TEST_CASE("central sections") {
  CHECK(section_volume(RadialBody::ball(3, 0.5), h, Direction::axis(3, 0)) ==
        doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-8));
  CHECK(section_volume(RadialBody::ball(3, 1.0), e, Direction::axis(3, 2)) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-8));
}

TEST_CASE("ellipsoid sections match the closed form") {
  const Vec a{0.3, 0.45, 0.6, 0.5};
  const auto E = RadialBody::ellipsoid(a);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int i = 0; i < 4; ++i) {
    Vec v(4);
    for (int j = 0; j < 4; ++j) v[j] = g(rng);
    const auto xi = Direction::normalize(v);
    double q = 0.0;
    for (int j = 0; j < 4; ++j) q += a[j] * a[j] * xi[j] * xi[j];
    const double exact = 8.0 * ball_volume(3) * 0.3 * 0.45 * 0.6 * 0.5 / std::sqrt(q);
    CHECK(section_volume(E, e, xi) == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("sections are monotone under containment") {
  const auto small = RadialBody::ellipsoid(Vec{0.3, 0.4, 0.5});
  const auto big = RadialBody::ball(3, 0.5);
  for (int delta = -1; delta <= 1; ++delta) {
    const auto m = CurvatureModel::from_delta(delta);
    const auto xi = Direction::normalize(Vec{1.0, 2.0, 2.0});
    CHECK(section_volume(small, m, xi) < section_volume(big, m, xi));
    CHECK(volume(small, m) < volume(big, m));
  }
}

TEST_CASE("profile at zero equals the Euclidean central section") {
  const auto E = RadialBody::ellipsoid(Vec{0.5, 0.6, 0.7});
  const auto xi = Direction::normalize(Vec{1.0, -1.0, 0.5});
  const ProfileEvaluator A(E, xi);
  CHECK(A(0.0) == doctest::Approx(section_volume(E, e, xi) / 4.0).epsilon(1e-8));
}

TEST_CASE("ellipsoid profiles scale as (1 - z^2 / h^2)^((n-1)/2)") {
  const Vec a{0.5, 0.6, 0.7, 0.8};
  const auto E = RadialBody::ellipsoid(a);
  const auto xi = Direction::normalize(Vec{1.0, 0.5, -0.3, 0.2});
  double q = 0.0;
  for (int j = 0; j < 4; ++j) q += a[j] * a[j] * xi[j] * xi[j];
  const double hsup = std::sqrt(q);
  const ProfileEvaluator A(E, xi, 32);
  CHECK(A.z_max() == doctest::Approx(hsup).epsilon(1e-10));
  const double a0 = A(0.0);
  for (double t : {0.2, 0.5, 0.8}) {
    const double z = t * hsup;
    CHECK(A(z) == doctest::Approx(a0 * std::pow(1.0 - t * t, 1.5)).epsilon(1e-7));
  }
}

TEST_CASE("ball profile derivatives") {
  const auto B = RadialBody::ball(4, 1.0);
  const auto p = derivative_stencil_profile(B, Direction::axis(4, 3));
  // A(z) = (4 pi / 3) (1 - z^2)^(3/2): A'' = -4 pi, A'''' = 12 pi, odd orders vanish.
  CHECK(profile_derivative_at_zero(p, 2) == doctest::Approx(-4.0 * M_PI).epsilon(1e-6));
  CHECK(profile_derivative_at_zero(p, 4) == doctest::Approx(12.0 * M_PI).epsilon(1e-3));
  CHECK(profile_derivative_at_zero(p, 1) == 0.0);
}

TEST_CASE("derivative stencil requirements") {
  const auto B = RadialBody::ball(3, 1.0);
  const auto p = parallel_section_profile(B, Direction::axis(3, 0), {0.1, 0.2});
  try {
    profile_derivative_at_zero(p, 2);
    FAIL("expected InsufficientStencil");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InsufficientStencil);
  }
}

TEST_CASE("image of the cylinder has the hyperbolic parallel section function") {
  const auto M = curvature_map(RadialBody::cylinder_caps(3, 0.5, 0.02), -1);
  const ProfileEvaluator A(M, Direction::axis(3, 0), 32);
  for (double t = 0.0; t <= 1.4 + 1e-12; t += 0.2) {
    const double y = (std::sqrt(2.0) + std::sqrt(2.0 + 4.0 * t * t)) / 2.0;
    CHECK(A(t) == doctest::Approx(M_PI * y * y).epsilon(2e-3));
  }
}

TEST_CASE("support points") {
  const auto E = RadialBody::ellipsoid(Vec{0.5, 0.6, 0.7});
  const auto xi = Direction::normalize(Vec{1.0, 1.0, 1.0});
  const auto sp = support_point(E, xi);
  CHECK(sp.value == doctest::Approx(std::sqrt((0.25 + 0.36 + 0.49) / 3.0)).epsilon(1e-10));
  CHECK(E.gauge(sp.point) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sup_radial(E) == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(inf_radial(E) == doctest::Approx(0.5).epsilon(1e-10));
}

}  // TEST_SUITE
