#include "bpgeom/engine.hpp"

#include <algorithm>
#include <cmath>

#include "bpgeom/error.hpp"
#include "bpgeom/measures.hpp"

namespace bp {

namespace {

Direction in_plane(const Direction& axis, const Vec& perp, double angle) {
  return Direction::normalize(axis.vec() * std::cos(angle) + perp * std::sin(angle));
}

double polar_angle(const Direction& axis, const Direction& xi) {
  return std::acos(std::clamp(std::abs(dot(axis.vec(), xi.vec())), 0.0, 1.0));
}

Direction reference_axis(const RadialBody& K, const RadialBody& L) {
  if (!K.isotropic()) {
    if (const auto a = K.axis()) return *a;
  }
  if (const auto a = L.axis()) return *a;
  return Direction::axis(K.dim(), 0);
}

bool accepts(ConvexFlag f) { return f == ConvexFlag::yes || f == ConvexFlag::boundary; }

}  // namespace

RadialBody build_cylinder_caps(int n, double t0, double eta) { return RadialBody::cylinder_caps(n, t0, eta); }

DefinitenessReport positive_definiteness_report(const RadialBody& K, CurvatureModel model, int grid,
                                                int resolution) {
  const int n = K.dim();
  if (n < 3) fail(ErrorCode::UnsupportedDimension, "positive definiteness tests need n >= 3");
  if (grid < 1) fail(ErrorCode::InvalidArgument, "direction grid must be non-empty");
  const RadialBody M = model.delta() == 0 ? K : curvature_map(K, model.delta());
  const auto axis_opt = K.axis();
  const Direction axis = axis_opt ? *axis_opt : Direction::axis(n, 0);
  const Vec perp = axis_opt ? orthonormal_complement(axis)[0] : Vec::unit(n, 1);
  DefinitenessReport out{{}, {}, std::numeric_limits<double>::infinity(), axis, 0};
  for (int i = 0; i < grid; ++i) {
    const double beta = grid == 1 ? 0.0 : 0.5 * M_PI * i / (grid - 1);
    const Direction xi = in_plane(axis, perp, beta);
    double v = std::numeric_limits<double>::quiet_NaN();
    try {
      v = fourier_minkowski_power(M, n - 2, xi, resolution);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotStarShapedFromOffset) throw;
      ++out.skipped;
    }
    out.directions.push_back(xi);
    out.values.push_back(v);
    if (v < out.min_value) {
      out.min_value = v;
      out.witness = xi;
    }
  }
  if (out.skipped == grid) {
    fail(ErrorCode::NotStarShapedFromOffset, "no probe direction admits a star-shaped slice decomposition");
  }
  return out;
}

InequalitySides zvavitch_inequality(double a, double b, int delta, int n) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) fail(ErrorCode::ParameterOutOfRange, "a and b must lie in (0, 1)");
  const CurvatureModel model = CurvatureModel::from_delta(delta);
  const RadialKernel sec = RadialKernel::section(n, model);
  const RadialKernel vol = RadialKernel::volume(n, model);
  return {a / (1.0 + delta * a * a) * sec.integral(a, b), vol.integral(a, b)};
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::counterexample: return "counterexample";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<Direction> polar_grid(const Direction& axis, int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "direction grid must be non-empty");
  const Vec perp = orthonormal_complement(axis)[0];
  std::vector<Direction> out;
  for (int i = 0; i < count; ++i) out.push_back(in_plane(axis, perp, count == 1 ? 0.0 : 0.5 * M_PI * i / (count - 1)));
  return out;
}

std::vector<Direction> polar_grid(const RadialBody& K, const RadialBody& L, int count) {
  return polar_grid(reference_axis(K, L), count);
}

BPReport bp_compare(const RadialBody& K, const RadialBody& L, CurvatureModel model,
                    const std::vector<Direction>& directions, const QuadratureSpec& spec, CompareTolerance tol) {
  if (K.dim() != L.dim()) fail(ErrorCode::DimensionMismatch, "compared bodies differ in dimension");
  if (directions.empty()) fail(ErrorCode::InvalidArgument, "direction grid must be non-empty");
  require_valid(K, model);
  require_valid(L, model);
  BPReport r;
  r.model = model;
  r.tolerance = tol;
  r.directions = directions;
  const Direction ref = reference_axis(K, L);
  r.max_section_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const double sk = section_volume(K, model, directions[i], spec);
    const double sl = section_volume(L, model, directions[i], spec);
    r.angles.push_back(polar_angle(ref, directions[i]));
    r.section_K.push_back(sk);
    r.section_L.push_back(sl);
    if (sk - sl > r.max_section_gap) {
      r.max_section_gap = sk - sl;
      r.witness = i;
    }
  }
  r.vol_K = volume(K, model, spec);
  r.vol_L = volume(L, model, spec);
  const double vol_gap = r.vol_K - r.vol_L;
  if (r.max_section_gap > tol.section) {
    r.verdict = Verdict::inconclusive;  // the section hypothesis fails
  } else if (vol_gap > tol.volume * r.vol_L) {
    r.verdict = Verdict::counterexample;
  } else if (vol_gap > 0.0) {
    r.verdict = Verdict::inconclusive;  // excess within the volume margin
  } else {
    r.verdict = Verdict::consistent;
  }
  return r;
}

PerturbationResult perturb_body(const RadialBody& L, CurvatureModel model, const PerturbationSpec& spec) {
  const int n = L.dim();
  if (n < 3) fail(ErrorCode::UnsupportedDimension, "perturbations need n >= 3");
  if (spec.axis.dim() != n) fail(ErrorCode::DimensionMismatch, "perturbation axis dimension mismatch");
  if (!(spec.width > 0.0) || !(spec.depth > 0.0)) {
    fail(ErrorCode::ParameterOutOfRange, "bump width and depth must be positive");
  }
  const double s = 0.5 * spec.width;
  auto bump = [&](double t) {
    const double phi = std::acos(std::min(1.0, std::abs(t)));
    const double d = phi - spec.cap_center_angle;
    return -spec.depth * std::exp(-d * d / (2.0 * s * s));
  };
  const ZonalExpansion v = expand_zonal(bump, spec.axis, n, spec.max_degree, 1e-8);
  const ZonalFunction g = zonal_fourier(v.function, 1.0, spec.max_degree).scaled(std::pow(2.0 * M_PI, -n));

  const CurvatureModel cert = model.delta() < 0 ? CurvatureModel::hyperbolic() : CurvatureModel::euclidean();
  if (spec.epsilon == 0.0) {
    const RadialBody K = RadialBody::perturbed(L, model, g, 0.0);
    return {K, v.function, g, 0.0, v.tail_norm, 0, classify_in_model(K, cert, spec.convexity)};
  }
  double eps = spec.epsilon;
  if (eps < 0.0) {
    double gmax = 0.0;
    for (int i = 0; i <= 4000; ++i) gmax = std::max(gmax, std::abs(g.at(i / 4000.0)));
    const double floor = RadialKernel::section(n, model).integral(inf_radial(L));
    eps = 0.05 * floor / gmax;
  }
  for (int halvings = 0; halvings <= spec.max_halvings; ++halvings, eps *= 0.5) {
    const RadialBody K = RadialBody::perturbed(L, model, g, eps);
    if (!validate_body(K, model).ok) continue;
    const ConvexFlag flag = classify_in_model(K, cert, spec.convexity);
    if (accepts(flag)) return {K, v.function, g, eps, v.tail_norm, halvings, flag};
  }
  fail(ErrorCode::EpsilonTooLarge, "no perturbation size passed the convexity certificate after " +
                                       std::to_string(spec.max_halvings) + " halvings");
}

double scale_radius(double eps, int n) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::ParameterOutOfRange, "scale_pair needs 0 < eps < 1");
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "scale_pair supports 2 <= n <= 5");
  return std::sqrt(std::expm1(-std::log1p(-eps) / n));
}

ScaledPair scale_pair(const RadialBody& K, const RadialBody& L, double eps) {
  if (K.dim() != L.dim()) fail(ErrorCode::DimensionMismatch, "scaled bodies differ in dimension");
  const double r = scale_radius(eps, K.dim());
  const double alpha = r / std::max(sup_radial(K), sup_radial(L));
  return {r, alpha, RadialBody::dilated(K, alpha), RadialBody::dilated(L, alpha)};
}

CounterexampleReport counterexample_hyperbolic(int n, const HyperbolicParams& params) {
  if (n == 2) {
    fail(ErrorCode::UnsupportedDimension,
         "n = 2: every central section comparison in the plane forces the volume comparison, so no counterexample exists");
  }
  if (n != 3 && n != 4) fail(ErrorCode::UnsupportedDimension, "the hyperbolic pipeline covers n = 3 and n = 4");
  const CurvatureModel model = CurvatureModel::hyperbolic();
  const RadialBody base = build_cylinder_caps(n, params.t0, params.eta);
  const double alpha = params.alpha_factor * inf_radial(base);
  const RadialBody L = RadialBody::strictified(base, alpha);

  const DefinitenessReport probe = positive_definiteness_report(L, model, params.probe_grid);
  // The bump is a cap about the axis, so negativity is required there;
  // off-axis probes of the non-convex mapped body only inform the report.
  if (!(probe.values.front() < 0.0)) {
    fail(ErrorCode::NegativityNotFound, "Fourier transform of the mapped body is non-negative at the axis");
  }
  const Direction axis = Direction::axis(n, 0);
  PerturbationSpec ps{axis};
  ps.width = params.width;
  ps.depth = params.depth;
  ps.epsilon = params.epsilon;
  ps.convexity.seed = params.seed;
  const PerturbationResult pert = perturb_body(L, model, ps);

  const BPReport bp = bp_compare(pert.body, L, model, polar_grid(axis, params.grid));
  ConvexitySpec cs;
  cs.seed = params.seed;
  CounterexampleReport rep{"hyperbolic",
                           pert.body,
                           L,
                           model,
                           bp,
                           probe.values.front(),
                           axis,
                           classify_convexity(pert.body, cs),
                           classify_convexity(L, cs),
                           pert.epsilon,
                           pert.halvings,
                           pert.v_tail,
                           alpha,
                           Verdict::inconclusive,
                           {{"n", n},
                            {"t0", params.t0},
                            {"eta", params.eta},
                            {"width", params.width},
                            {"depth", params.depth},
                            {"alpha_factor", params.alpha_factor},
                            {"grid", params.grid},
                            {"seed", static_cast<double>(params.seed)}},
                           std::nullopt};
  const bool certified = accepts(rep.convexity_K.h_convex()) && accepts(rep.convexity_L.h_convex());
  rep.verdict = bp.verdict == Verdict::counterexample && !certified ? Verdict::inconclusive : bp.verdict;
  return rep;
}

CounterexampleReport counterexample_sphere(int n, const SphereParams& params) {
  if (n != 5) fail(ErrorCode::UnsupportedDimension, "the spherical pipeline is implemented for n = 5");
  QuadratureSpec spec;
  spec.sphere_resolution = params.resolution;
  const RadialBody base = RadialBody::lq_ball(n, params.q, params.scale);
  const double alpha = params.alpha_factor * inf_radial(base);
  const RadialBody L = RadialBody::strictified(base, alpha);

  // Probe the degree -1 Fourier transform of ||x||_L^{-1} (k = 3) along a
  // few symmetry directions of the cube.
  double fmin = std::numeric_limits<double>::infinity();
  Direction witness = Direction::axis(n, 0);
  for (int m = 1; m <= n; ++m) {
    Vec v(n);
    for (int i = 0; i < m; ++i) v[i] = 1.0;
    const Direction xi = Direction::normalize(v);
    const double f = fourier_minkowski_power(L, 3, xi, params.profile_resolution);
    if (f < fmin) {
      fmin = f;
      witness = xi;
    }
  }
  if (!(fmin < 0.0)) {
    fail(ErrorCode::NegativityNotFound, "no negative value of (||x||_L^{-1})^ found for the l_q base body");
  }

  PerturbationSpec ps{witness};
  ps.width = params.width;
  ps.depth = params.depth;
  ps.epsilon = params.epsilon;
  ps.max_degree = params.max_degree;
  ps.convexity.seed = params.seed;
  const PerturbationResult pert = perturb_body(L, CurvatureModel::euclidean(), ps);
  const auto grid = polar_grid(witness, params.grid);
  const BPReport euclid = bp_compare(pert.body, L, CurvatureModel::euclidean(), grid, spec);

  ConvexitySpec cs;
  cs.seed = params.seed;
  CounterexampleReport rep{"sphere",
                           pert.body,
                           L,
                           CurvatureModel::spherical(),
                           euclid,
                           fmin,
                           witness,
                           {},
                           {},
                           pert.epsilon,
                           pert.halvings,
                           pert.v_tail,
                           alpha,
                           Verdict::inconclusive,
                           {{"n", n},
                            {"q", params.q},
                            {"scale", params.scale},
                            {"alpha_factor", params.alpha_factor},
                            {"width", params.width},
                            {"depth", params.depth},
                            {"max_degree", params.max_degree},
                            {"resolution", params.resolution},
                            {"grid", params.grid},
                            {"seed", static_cast<double>(params.seed)}},
                           std::nullopt};
  if (euclid.verdict != Verdict::counterexample) {
    rep.model = CurvatureModel::euclidean();
    rep.convexity_K = classify_convexity(pert.body, cs);
    rep.convexity_L = classify_convexity(L, cs);
    return rep;
  }

  // Shrink K so that its sections become strictly smaller while its volume
  // stays above vol_L: (1 - eta)^n = sqrt(vol_L / vol_K).
  const double ratio = euclid.vol_K / euclid.vol_L;
  const double eta = -std::expm1(-std::log(ratio) / (2.0 * n));
  const RadialBody K_strict = RadialBody::dilated(pert.body, 1.0 - eta);
  const double section_room = -std::expm1((n - 1) * std::log1p(-eta));
  const double volume_room = -std::expm1(-0.5 * std::log(ratio));
  const double margin = 0.5 * std::min(section_room, volume_room);
  const ScaledPair scaled = scale_pair(K_strict, L, margin);

  rep.K = scaled.K;
  rep.L = scaled.L;
  rep.bp = bp_compare(scaled.K, scaled.L, CurvatureModel::spherical(), grid, spec);
  rep.convexity_K = classify_convexity(scaled.K, cs);
  rep.convexity_L = classify_convexity(scaled.L, cs);
  rep.sphere = SphereStage{euclid, eta, margin, scaled.r, scaled.alpha,
                           std::max(sup_radial(scaled.K), sup_radial(scaled.L))};
  const bool certified = accepts(rep.convexity_K.s_convex()) && accepts(rep.convexity_L.s_convex());
  rep.verdict = rep.bp.verdict == Verdict::counterexample && !certified ? Verdict::inconclusive : rep.bp.verdict;
  return rep;
}

}  // namespace bp
