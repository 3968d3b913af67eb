#include <cmath>
#include <random>

#include "bpgeom/body.hpp"
#include "bpgeom/body_json.hpp"
#include "bpgeom/error.hpp"
#include "bpgeom/vec.hpp"
#include "bpgeom/zonal.hpp"
#include "doctest.h"

using namespace bp;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bp::Error");
  return ErrorCode::InvalidArgument;
}

Direction random_direction(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return Direction::normalize(v);
}

}  // namespace

TEST_SUITE("core_types") {

TEST_CASE("directions must be unit vectors") {
  CHECK(code_of([] { Direction(Vec{1.0, 1.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { Direction::normalize(Vec{0.0, 0.0, 0.0}); }) == ErrorCode::InvalidArgument);
  const auto d = Direction::normalize(Vec{3.0, 4.0});
  CHECK(d[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(d[1] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("curvature model takes exactly three values") {
  CHECK(CurvatureModel::from_letter('h').delta() == -1);
  CHECK(CurvatureModel::from_letter('e').delta() == 0);
  CHECK(CurvatureModel::from_letter('s').delta() == 1);
  CHECK(code_of([] { CurvatureModel::from_delta(2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { CurvatureModel::from_letter('x'); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("orthonormal complement spans xi-perp") {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 5; ++n) {
    const auto xi = random_direction(rng, n);
    const auto basis = orthonormal_complement(xi);
    for (int i = 0; i < n - 1; ++i) {
      CHECK(std::abs(dot(basis[i], xi.vec())) < 1e-14);
      for (int j = 0; j < n - 1; ++j) CHECK(std::abs(dot(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("ellipsoid radial function matches the quadratic form") {
  const auto E = RadialBody::ellipsoid(Vec{0.5, 0.7, 0.9});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto t = random_direction(rng, 3);
    const double q = t[0] * t[0] / 0.25 + t[1] * t[1] / 0.49 + t[2] * t[2] / 0.81;
    CHECK(E.radial(t.vec()) == doctest::Approx(1.0 / std::sqrt(q)).epsilon(1e-14));
    CHECK(E.gauge(0.3 * t.vec()) == doctest::Approx(0.3 * std::sqrt(q)).epsilon(1e-14));
  }
}

TEST_CASE("cylinder with caps has its constructed radii") {
  const auto M = RadialBody::cylinder_caps(3, 0.5, 0.02);
  // Cap sphere centred at -c e_1 with radius sqrt(c^2 + 1), c = 1/4.
  CHECK(M.radial(Vec{1.0, 0.0, 0.0}) == doctest::Approx(std::sqrt(1.0625) - 0.25).epsilon(1e-12));
  CHECK(M.radial(Vec{0.0, 1.0, 0.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(code_of([] { RadialBody::cylinder_caps(3, 0.8, 0.02); }) == ErrorCode::ParameterOutOfRange);
}

TEST_CASE("lq ball radial function") {
  const auto B = RadialBody::lq_ball(4, 4.0, 0.5);
  const double s = 0.5;
  const Vec t{0.5, 0.5, 0.5, 0.5};
  CHECK(B.radial(t) == doctest::Approx(s / std::pow(4.0 * std::pow(0.5, 4.0), 0.25)).epsilon(1e-14));
}

TEST_CASE("curvature radial map is inverted") {
  for (int sigma : {-1, 1}) {
    for (double r : {0.05, 0.3, 0.45}) {
      CHECK(inverse_curvature_radial(curvature_radial(r, sigma), sigma) == doctest::Approx(r).epsilon(1e-14));
    }
  }
}

TEST_CASE("validation rejects asymmetric and out-of-model bodies") {
  CHECK(validate_body(RadialBody::ball(3, 0.9), CurvatureModel::spherical()).ok);
  const auto v = validate_body(RadialBody::ball(3, 1.0), CurvatureModel::hyperbolic());
  CHECK_FALSE(v.ok);
  CHECK(*v.violated == ErrorCode::ModelDomainError);
  CHECK(validate_body(RadialBody::ball(3, 1.5), CurvatureModel::euclidean()).ok);
  CHECK(code_of([] { RadialBody::ball(3, -1.0); }) == ErrorCode::ParameterOutOfRange);
  CHECK(code_of([] { RadialBody::ball(6, 1.0); }) == ErrorCode::UnsupportedDimension);
}

TEST_CASE("zonal table interpolates its samples") {
  const std::vector<double> samples{0.8, 0.7, 0.6, 0.65, 0.75};
  const auto T = RadialBody::zonal_table(Direction::axis(3, 2), samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double phi = M_PI * static_cast<double>(i) / (samples.size() - 1);
    CHECK(T.radial_at_cos(std::cos(phi)) == doctest::Approx(samples[i]).epsilon(1e-12));
  }
}

TEST_CASE("gegenbauer polynomials") {
  // C_2^lambda(t) = 2 lambda (lambda + 1) t^2 - lambda.
  for (double lambda : {0.5, 1.0, 1.5}) {
    for (double t : {-0.7, 0.1, 0.9}) {
      CHECK(gegenbauer(2, lambda, t) == doctest::Approx(2 * lambda * (lambda + 1) * t * t - lambda).epsilon(1e-14));
    }
    CHECK(gegenbauer(6, lambda, 1.0) == doctest::Approx(gegenbauer_at_one(6, lambda)).epsilon(1e-13));
  }
  // lambda = 1/2: Legendre P_2, norm 2 / 5.
  CHECK(gegenbauer_norm2(2, 0.5) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("zonal functions are even") {
  const ZonalFunction f(Direction::axis(4, 1), 4, {1.0, -0.3, 0.05});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto t = random_direction(rng, 4);
    CHECK(f(t.vec()) == f(-t.vec()));
  }
}

TEST_CASE("body JSON round trip is idempotent") {
  const char* specs[] = {
      R"({"n": 3, "shape": "ball", "params": {"rho0": 0.5}})",
      R"({"n": 3, "shape": "ellipsoid", "params": {"semiaxes": [0.4, 0.5, 0.6]}})",
      R"({"n": 4, "shape": "cylinder_caps", "params": {"t0": 0.5, "eta": 0.02}})",
      R"({"n": 5, "shape": "lq_ball", "params": {"q": 4, "scale": 0.5}})",
      R"({"n": 3, "shape": "zonal_table", "params": {"axis": [0, 0, 1], "samples": [0.5, 0.4, 0.5]}})",
      R"({"n": 3, "shape": "mapped", "params": {"sigma": -1, "base": {"n": 3, "shape": "ball", "params": {"rho0": 0.5}}}})",
  };
  for (const char* s : specs) {
    const auto once = canonical_dump(body_to_json(body_from_string(s)));
    const auto twice = canonical_dump(body_to_json(body_from_string(once)));
    CHECK(once == twice);
  }
}

TEST_CASE("body JSON rejects unknown keys and shapes") {
  CHECK(code_of([] { body_from_string(R"({"n": 3, "shape": "ball", "params": {"rho0": 1, "x": 2}})"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { body_from_string(R"({"n": 3, "shape": "cube", "params": {}})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { body_from_string(R"({"n": 3, "shape": "ball", "params": {"rho0": 1}, "extra": 0})"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { load_body_file("/nonexistent/body.json"); }) == ErrorCode::IoError);
}

}  // TEST_SUITE
