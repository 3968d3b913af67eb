#include <cmath>
#include <random>

#include "bpgeom/engine.hpp"
#include "bpgeom/error.hpp"
#include "bpgeom/measures.hpp"
#include "bpgeom/quadrature.hpp"
#include "doctest.h"

using namespace bp;

namespace {

template <class F>
double simpson(F f, double a, double b, int m = 4000) {
  const double h = (b - a) / m;
  double s = f(a) + f(b);
  for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

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

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("elementary inequality instance and oracle") {
  const auto s = zvavitch_inequality(0.2, 0.8, 0, 3);
  CHECK(s.lhs == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(s.rhs == doctest::Approx(0.168).epsilon(1e-12));
  const double a = 0.3, b = 0.9;
  const auto t = zvavitch_inequality(a, b, -1, 4);
  const double lhs = a / (1.0 - a * a) * simpson([](double r) { return r * r / std::pow(1.0 - r * r, 3); }, a, b);
  const double rhs = simpson([](double r) { return r * r * r / std::pow(1.0 - r * r, 4); }, a, b);
  CHECK(t.lhs == doctest::Approx(lhs).epsilon(1e-9));
  CHECK(t.rhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("elementary inequality holds on random samples") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 0.999);
  for (int i = 0; i < 500; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const int delta = static_cast<int>(rng() % 3) - 1;
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto s = zvavitch_inequality(a, b, delta, n);
    CHECK(s.lhs <= s.rhs + 1e-12);
  }
}

TEST_CASE("scale radius") {
  CHECK(scale_radius(0.1, 5) == doctest::Approx(0.14593).epsilon(1e-4));
  CHECK(scale_radius(0.1, 5) == doctest::Approx(std::sqrt(std::pow(0.9, -0.2) - 1.0)).epsilon(1e-12));
  const auto p = scale_pair(RadialBody::ball(5, 0.6), RadialBody::ball(5, 0.8), 0.1);
  CHECK(p.alpha == doctest::Approx(p.r / 0.8).epsilon(1e-12));
  CHECK(sup_radial(p.L) == doctest::Approx(p.r).epsilon(1e-10));
}

TEST_CASE("identical bodies compare as consistent with zero gap") {
  const auto K = RadialBody::ellipsoid(Vec{0.4, 0.4, 0.6});
  const auto r = bp_compare(K, K, CurvatureModel::euclidean(), polar_grid(K, K, 8));
  CHECK(r.verdict == Verdict::consistent);
  CHECK(r.max_section_gap == 0.0);
  CHECK(r.directions.size() == 8);
  CHECK(r.angles.front() == 0.0);
  CHECK(r.angles.back() == doctest::Approx(M_PI / 2));
}

TEST_CASE("nested balls are consistent in the sphere model") {
  const auto K = RadialBody::ball(3, 0.4), L = RadialBody::ball(3, 0.5);
  const auto r = bp_compare(K, L, CurvatureModel::spherical(), polar_grid(K, L, 6));
  CHECK(r.verdict == Verdict::consistent);
  CHECK(r.max_section_gap < 0.0);
  CHECK(r.vol_K < r.vol_L);
}

TEST_CASE("larger volume with larger sections is not a counterexample") {
  const auto K = RadialBody::ball(3, 0.5), L = RadialBody::ball(3, 0.4);
  const auto r = bp_compare(K, L, CurvatureModel::hyperbolic(), polar_grid(K, L, 4));
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(r.max_section_gap > 0.0);
}

TEST_CASE("perturbation solves the section kernel equation") {
  const auto L = RadialBody::ellipsoid(Vec{0.5, 0.5, 0.6});
  for (int delta = -1; delta <= 1; ++delta) {
    const auto model = CurvatureModel::from_delta(delta);
    PerturbationSpec spec(Direction::axis(3, 2));
    spec.epsilon = 1e-3;
    const auto res = perturb_body(L, model, spec);
    CHECK(res.epsilon == 1e-3);
    CHECK(res.v_tail < 1e-8);
    const RadialKernel k = RadialKernel::section(3, model);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int i = 0; i < 10; ++i) {
      const auto t = Direction::normalize(Vec{g(rng), g(rng), g(rng)});
      CHECK(k.integral(res.body.radial(t.vec())) ==
            doctest::Approx(k.integral(L.radial(t.vec())) + 1e-3 * res.g(t.vec())).epsilon(1e-11));
    }
  }
  PerturbationSpec zero(Direction::axis(3, 2));
  zero.epsilon = 0.0;
  const auto same = perturb_body(L, CurvatureModel::euclidean(), zero);
  CHECK(same.body.radial(Vec{0.6, 0.0, 0.8}) == L.radial(Vec{0.6, 0.0, 0.8}));
}

TEST_CASE("balls are positive definite in every model") {
  for (int delta = -1; delta <= 1; ++delta) {
    const auto r = positive_definiteness_report(RadialBody::ball(3, 0.5), CurvatureModel::from_delta(delta), 4, 32);
    CHECK(r.min_value > 0.0);
    CHECK(r.skipped == 0);
    CHECK(r.values.size() == 4);
  }
}

TEST_CASE("cylinder body is the same from both constructors") {
  const auto a = build_cylinder_caps(4), b = RadialBody::cylinder_caps(4, 0.5, 0.02);
  for (const Vec& t : {Vec{1.0, 0.0, 0.0, 0.0}, Vec{0.6, 0.8, 0.0, 0.0}, Vec{0.0, 0.0, 0.0, 1.0}}) {
    CHECK(a.radial(t) == b.radial(t));
  }
}

TEST_CASE("pipelines reject unsupported dimensions") {
  CHECK(code_of([] { counterexample_hyperbolic(2); }) == ErrorCode::UnsupportedDimension);
  CHECK(code_of([] { counterexample_sphere(4); }) == ErrorCode::UnsupportedDimension);
}

}  // TEST_SUITE
