#include "bpgeom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bpgeom/error.hpp"
#include "bpgeom/parallel.hpp"

namespace bp {

namespace {

struct PlaneFrame {
  Vec e1, e2;
  double p1 = 0.0, q1 = 0.0, q2 = 0.0;  // p = p1 e1, q = q1 e1 + q2 e2
  bool degenerate = false;              // p, q and 0 collinear
};

PlaneFrame plane_frame(const Vec& p, const Vec& q) {
  PlaneFrame f;
  const double np = norm(p), nq = norm(q);
  const double scale = std::max(np, nq);
  if (np <= 1e-15 * std::max(scale, 1.0) || nq <= 1e-15 * std::max(scale, 1.0)) {
    f.degenerate = true;
    return f;
  }
  f.e1 = p * (1.0 / np);
  f.p1 = np;
  f.q1 = dot(q, f.e1);
  Vec r = q - f.e1 * f.q1;
  const double nr = norm(r);
  // |det| = p1 * q2 relative to the squared scale.
  if (np * nr <= 1e-12 * scale * scale) {
    f.degenerate = true;
    return f;
  }
  f.e2 = r * (1.0 / nr);
  f.q2 = nr;
  return f;
}

void check_points(const GeodesicSpec& s) {
  if (s.p.dim() != s.q.dim()) fail(ErrorCode::DimensionMismatch, "geodesic endpoints differ in dimension");
  const int delta = s.model.delta();
  if (delta == 0) return;
  const double np2 = dot(s.p, s.p);
  if (delta > 0 && np2 > 0.0) {
    // The spherical antipode of p in this chart is -p / |p|^2.
    const Vec anti = s.p * (-1.0 / np2);
    if (norm(s.q - anti) <= 1e-12 * std::max(1.0, norm(anti))) {
      fail(ErrorCode::AntipodalPair, "endpoints are antipodal; the spherical geodesic is not unique");
    }
  }
  if (np2 >= 1.0 || dot(s.q, s.q) >= 1.0) {
    fail(ErrorCode::PointOutsideModel, "geodesic endpoints must lie in the open unit ball");
  }
}

struct Arc {
  double cx, cy, radius, a0, sweep;
};

// Circle through p and q with C.x = (|x|^2 - delta)/2, and the arc whose
// midpoint lies closer to the origin.
Arc circle_arc(const PlaneFrame& f, int delta) {
  const double bp = 0.5 * (f.p1 * f.p1 - delta);
  const double bq = 0.5 * (f.q1 * f.q1 + f.q2 * f.q2 - delta);
  const double cx = bp / f.p1;
  const double cy = (bq - cx * f.q1) / f.q2;
  const double radius = std::sqrt(std::max(0.0, cx * cx + cy * cy + delta));
  const double a0 = std::atan2(-cy, f.p1 - cx);
  const double a1 = std::atan2(f.q2 - cy, f.q1 - cx);
  double d = a1 - a0;
  while (d > M_PI) d -= 2.0 * M_PI;
  while (d <= -M_PI) d += 2.0 * M_PI;
  const double other = d > 0.0 ? d - 2.0 * M_PI : d + 2.0 * M_PI;
  auto mid_norm = [&](double sweep) {
    const double a = a0 + 0.5 * sweep;
    return std::hypot(cx + radius * std::cos(a), cy + radius * std::sin(a));
  };
  const double sweep = mid_norm(d) <= mid_norm(other) ? d : other;
  return {cx, cy, radius, a0, sweep};
}

double radical_inverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Pairs of random directions from a shifted Halton sequence mapped through
// Box-Muller.
std::vector<std::pair<Vec, Vec>> direction_pairs(int n, int count, std::uint64_t seed) {
  const int per_dir = 2 * ((n + 1) / 2);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> shift(static_cast<std::size_t>(2 * per_dir));
  for (double& s : shift) s = uni(rng);
  std::vector<std::pair<Vec, Vec>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::array<Vec, 2> dirs{Vec(n), Vec(n)};
    for (int d = 0; d < 2; ++d) {
      std::array<double, 6> z{};
      for (int k = 0; k < per_dir; k += 2) {
        const int dim = d * per_dir + k;
        double u1 = radical_inverse(static_cast<std::uint64_t>(i + 1), kPrimes[dim]) + shift[static_cast<std::size_t>(dim)];
        double u2 = radical_inverse(static_cast<std::uint64_t>(i + 1), kPrimes[dim + 1]) + shift[static_cast<std::size_t>(dim + 1)];
        u1 -= std::floor(u1);
        u2 -= std::floor(u2);
        const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
        z[static_cast<std::size_t>(k)] = r * std::cos(2.0 * M_PI * u2);
        z[static_cast<std::size_t>(k + 1)] = r * std::sin(2.0 * M_PI * u2);
      }
      for (int k = 0; k < n; ++k) dirs[static_cast<std::size_t>(d)][k] = z[static_cast<std::size_t>(k)];
      dirs[static_cast<std::size_t>(d)] = Direction::normalize(dirs[static_cast<std::size_t>(d)]).vec();
    }
    out.emplace_back(dirs[0], dirs[1]);
  }
  return out;
}

}  // namespace

GeodesicCircle geodesic_circle(const GeodesicSpec& spec) {
  check_points(spec);
  GeodesicCircle c;
  if (spec.model.delta() == 0) return c;
  const PlaneFrame f = plane_frame(spec.p, spec.q);
  if (f.degenerate) return c;
  const Arc a = circle_arc(f, spec.model.delta());
  return {false, a.cx, a.cy, a.radius};
}

Vec geodesic_point(const GeodesicSpec& spec, double t) {
  check_points(spec);
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::ParameterOutOfRange, "geodesic parameter must lie in [0, 1]");
  if (t == 0.0) return spec.p;
  if (t == 1.0) return spec.q;
  const int delta = spec.model.delta();
  const PlaneFrame f = delta == 0 ? PlaneFrame{Vec(spec.p.dim()), Vec(spec.p.dim()), 0, 0, 0, true}
                                  : plane_frame(spec.p, spec.q);
  if (f.degenerate) return spec.p * (1.0 - t) + spec.q * t;
  const Arc a = circle_arc(f, delta);
  const double ang = a.a0 + t * a.sweep;
  return f.e1 * (a.cx + a.radius * std::cos(ang)) + f.e2 * (a.cy + a.radius * std::sin(ang));
}

RadialBody curvature_map(const RadialBody& body, int sigma) { return RadialBody::mapped(body, sigma); }

RadialBody inverse_curvature_map(const RadialBody& body, int sigma) {
  return RadialBody::mapped(body, sigma, true);
}

std::string_view flag_name(ConvexFlag f) {
  switch (f) {
    case ConvexFlag::yes: return "yes";
    case ConvexFlag::no: return "no";
    case ConvexFlag::boundary: return "boundary";
    case ConvexFlag::undefined: return "undefined";
  }
  return "undefined";
}

namespace {

struct PairOutcome {
  bool violated = false;
  bool on_boundary = false;
  double worst = 0.0;
  double t = 0.0;
};

ConvexFlag classify_pairs(const RadialBody& body, CurvatureModel model, const ConvexitySpec& spec,
                          const std::vector<std::pair<Vec, Vec>>& pairs, double sup_rho,
                          std::optional<ConvexityWitness>* witness) {
  std::vector<PairOutcome> outcome(pairs.size());
  std::vector<std::pair<Vec, Vec>> points(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const Vec p = pairs[i].first * body.radial(pairs[i].first);
    const Vec q = pairs[i].second * body.radial(pairs[i].second);
    points[i] = {p, q};
    PairOutcome& o = outcome[i];
    if (norm(p - q) < spec.tau_margin * sup_rho) return;
    if (model.delta() > 0) {
      const Vec anti = p * (-1.0 / dot(p, p));
      if (norm(q - anti) <= 1e-9) return;
    }
    const GeodesicSpec g{p, q, model};
    bool all_on = true;
    for (int j = 1; j <= spec.points; ++j) {
      const double t = static_cast<double>(j) / (spec.points + 1);
      const double gauge = body.gauge(geodesic_point(g, t));
      if (gauge > 1.0 + spec.tau && gauge > o.worst) {
        o.violated = true;
        o.worst = gauge;
        o.t = t;
      }
      if (std::abs(gauge - 1.0) > spec.tau) all_on = false;
    }
    o.on_boundary = all_on;
  });
  bool boundary = false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (outcome[i].violated) {
      if (witness) *witness = ConvexityWitness{points[i].first, points[i].second, outcome[i].t, outcome[i].worst};
      return ConvexFlag::no;
    }
    boundary = boundary || outcome[i].on_boundary;
  }
  return boundary ? ConvexFlag::boundary : ConvexFlag::yes;
}

}  // namespace

ConvexFlag classify_in_model(const RadialBody& body, CurvatureModel model, const ConvexitySpec& spec,
                             std::optional<ConvexityWitness>* witness) {
  if (spec.pairs < 1 || spec.points < 1) fail(ErrorCode::ParameterOutOfRange, "convexity sampling needs pairs, points >= 1");
  const double sup_rho = validate_body(body, CurvatureModel::euclidean()).sup_radial;
  if (model.delta() != 0 && sup_rho >= 1.0 - 1e-9) return ConvexFlag::undefined;
  const auto pairs = direction_pairs(body.dim(), spec.pairs, spec.seed);
  return classify_pairs(body, model, spec, pairs, sup_rho, witness);
}

ConvexityVerdict classify_convexity(const RadialBody& body, const ConvexitySpec& spec) {
  ConvexityVerdict v;
  if (spec.pairs < 1 || spec.points < 1) fail(ErrorCode::ParameterOutOfRange, "convexity sampling needs pairs, points >= 1");
  const double sup_rho = validate_body(body, CurvatureModel::euclidean()).sup_radial;
  const auto pairs = direction_pairs(body.dim(), spec.pairs, spec.seed);
  for (int delta = -1; delta <= 1; ++delta) {
    const auto i = static_cast<std::size_t>(delta + 1);
    if (delta != 0 && sup_rho >= 1.0 - 1e-9) continue;
    v.flags[i] = classify_pairs(body, CurvatureModel::from_delta(delta), spec, pairs, sup_rho, &v.witnesses[i]);
  }
  return v;
}

}  // namespace bp
