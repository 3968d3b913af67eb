#include <cmath>
#include <random>

#include "bpgeom/error.hpp"
#include "bpgeom/harmonic.hpp"
#include "bpgeom/measures.hpp"
#include "doctest.h"

using namespace bp;

namespace {

// Fourier transform of |x|^{-p} in R^n: c |xi|^{-n+p}.
double power_transform(double p, int n) {
  return std::pow(2.0, n - p) * std::pow(M_PI, 0.5 * n) * std::tgamma(0.5 * (n - p)) / std::tgamma(0.5 * p);
}

double area_oracle(int n) { return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n); }

ZonalFunction random_zonal(std::mt19937_64& rng, int n, int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c;
  for (int j = 0; j < terms; ++j) c.push_back(u(rng));
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return ZonalFunction(Direction::normalize(v), n, c);
}

}  // namespace

TEST_SUITE("harmonic") {

TEST_CASE("multiplier matches the Radon eigenvalues for p = n - 1") {
  for (int n = 3; n <= 5; ++n) {
    CHECK(fourier_multiplier(0, n - 1, n) == doctest::Approx(M_PI * area_oracle(n - 1)).epsilon(1e-13));
    // Funk-Hecke: C_2(0) / C_2(1) = -1 / (n - 1).
    CHECK(fourier_multiplier(2, n - 1, n) == doctest::Approx(-M_PI * area_oracle(n - 1) / (n - 1)).epsilon(1e-13));
  }
  for (double p : {0.5, 1.0, 2.0}) CHECK(fourier_multiplier(0, p, 3) == doctest::Approx(power_transform(p, 3)));
}

TEST_CASE("Radon and multiplier routes agree on zonal polynomials") {
  std::mt19937_64 rng(31);
  for (int n = 3; n <= 5; ++n) {
    for (int i = 0; i < 3; ++i) CHECK(radon_fourier_consistency(random_zonal(rng, n, 5)) < 1e-6);
  }
}

TEST_CASE("spherical Radon transform of constants and quadratics") {
  const auto xi = Direction::normalize(Vec{1.0, 2.0, 3.0, 4.0});
  CHECK(spherical_radon([](const Vec&) { return 1.0; }, xi) == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
  // <x, xi>^2 vanishes on xi-perp; x_1^2 averages to (1 - xi_1^2) / 3 there.
  CHECK(std::abs(spherical_radon([&](const Vec& x) { return std::pow(dot(x, xi.vec()), 2); }, xi)) < 1e-13);
  CHECK(spherical_radon([](const Vec& x) { return x[0] * x[0]; }, xi) ==
        doctest::Approx(4.0 * M_PI * (1.0 - xi[0] * xi[0]) / 3.0).epsilon(1e-12));
}

TEST_CASE("zonal expansion reproduces polynomials and flags truncation") {
  const auto axis = Direction::axis(3, 2);
  const auto ex = expand_zonal([](double t) { return 1.0 + t * t - 2.0 * std::pow(t, 6); }, axis, 3, 8);
  CHECK(ex.tail_norm < 1e-13);
  CHECK(ex.function.at(0.3) == doctest::Approx(1.0 + 0.09 - 2.0 * std::pow(0.3, 6)).epsilon(1e-13));
  try {
    expand_zonal([](double t) { return std::abs(t); }, axis, 3, 8, 1e-8);
    FAIL("expected DegreeOverflow");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DegreeOverflow);
  }
}

TEST_CASE("zonal Fourier transform is linear with the multiplier on each degree") {
  const ZonalFunction f(Direction::axis(4, 0), 4, {0.0, 1.0});
  const auto g = zonal_fourier(f, 1.0);
  CHECK(g.coeffs()[1] == doctest::Approx(fourier_multiplier(2, 1.0, 4)).epsilon(1e-14));
  const ZonalFunction big(Direction::axis(4, 0), 4, std::vector<double>(30, 1.0));
  CHECK_THROWS_AS(zonal_fourier(big, 1.0, 16), Error);
}

TEST_CASE("Fourier transform of powers of the ball norm") {
  // ||x||^{-n+k+1} = |x|^{-(n-k-1)} for the unit ball.
  CHECK(fourier_minkowski_power(RadialBody::ball(3, 1.0), 1, Direction::axis(3, 0)) ==
        doctest::Approx(power_transform(1, 3)).epsilon(1e-4));
  CHECK(fourier_minkowski_power(RadialBody::ball(4, 1.0), 2, Direction::axis(4, 0)) ==
        doctest::Approx(power_transform(1, 4)).epsilon(1e-4));
  CHECK(fourier_minkowski_power(RadialBody::ball(5, 1.0), 3, Direction::axis(5, 0)) ==
        doctest::Approx(power_transform(1, 5)).epsilon(1e-4));
  // Homogeneity: radius r scales the transform by r^{n-k-1}.
  CHECK(fourier_minkowski_power(RadialBody::ball(3, 0.5), 1, Direction::axis(3, 0)) ==
        doctest::Approx(0.5 * power_transform(1, 3)).epsilon(1e-4));
}

TEST_CASE("zonal multiplier path for homogeneous norms") {
  for (double p : {1.0, 2.0}) {
    CHECK(homogeneous_fourier(RadialBody::ball(3, 1.0), p, Direction::axis(3, 1)) ==
          doctest::Approx(power_transform(p, 3)).epsilon(1e-10));
  }
  // Even k: the parallel-section route equals the multiplier route.
  const auto E = RadialBody::ellipsoid(Vec{0.5, 0.5, 0.5, 0.8});
  const auto xi = Direction::normalize(Vec{0.3, 0.0, 0.0, 1.0});
  CHECK(fourier_minkowski_power(E, 2, xi, 32) == doctest::Approx(homogeneous_fourier(E, 1.0, xi)).epsilon(1e-4));
}

TEST_CASE("sections through the Fourier route") {
  for (int n : {3, 4}) {
    Vec a(n);
    for (int i = 0; i < n; ++i) a[i] = 0.4;
    a[n - 1] = 0.7;
    const auto bodies = {RadialBody::ball(n, 0.6), RadialBody::ellipsoid(a)};
    for (const auto& K : bodies) {
      for (int delta = -1; delta <= 1; ++delta) {
        const auto m = CurvatureModel::from_delta(delta);
        const auto xi = Direction::normalize(Vec::unit(n, 0) + 0.5 * Vec::unit(n, n - 1));
        CHECK(section_volume_via_fourier(K, m, xi) == doctest::Approx(section_volume(K, m, xi)).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("Parseval pairing") {
  const auto B = RadialBody::ball(3, 1.0);
  const auto r = parseval_pairing(B, B);
  CHECK(r.lhs == doctest::Approx(32.0 * std::pow(M_PI, 4)).epsilon(1e-4));
  CHECK(r.rhs == doctest::Approx(32.0 * std::pow(M_PI, 4)).epsilon(1e-4));
  const auto K = RadialBody::ellipsoid(Vec{0.5, 0.5, 0.8});
  const auto L = RadialBody::ellipsoid(Vec{0.7, 0.7, 0.4});
  const auto q = parseval_pairing(K, L);
  CHECK(q.lhs == doctest::Approx(q.rhs).epsilon(5e-3));
}

}  // TEST_SUITE
