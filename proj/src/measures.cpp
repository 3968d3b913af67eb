#include "bpgeom/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "bpgeom/error.hpp"
#include "bpgeom/parallel.hpp"

namespace bp {

namespace {

constexpr double kZonalRelTol = 1e-13;

// Unit vector in span(a, xi) orthogonal to a, oriented towards xi, and the
// angle beta between a and xi (a flipped so that beta <= pi/2).
struct ZonalFrame {
  Vec a, e;
  double beta;
};

ZonalFrame zonal_frame(const Direction& axis, const Direction& xi) {
  Vec a = axis.vec();
  if (dot(a, xi.vec()) < 0.0) a = a * -1.0;
  const double c = std::clamp(dot(a, xi.vec()), -1.0, 1.0);
  const Vec e = perpendicular_in_plane(Direction::normalize(a), xi.vec());
  return {a, e, std::acos(c)};
}

double pow_int(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Golden-section maximization of f on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

// 1-D grid search followed by golden-section refinement.
double grid_max(const std::function<double(double)>& f, double lo, double hi, int count) {
  int best = 0;
  double fbest = -std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / count;
  for (int i = 0; i <= count; ++i) {
    const double v = f(lo + step * i);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  const double a = std::max(lo, lo + step * (best - 1));
  const double b = std::min(hi, lo + step * (best + 1));
  const double x = golden_max(f, a, b);
  return f(x) >= fbest ? x : lo + step * best;
}

// Compass search on the sphere from theta0.
Vec sphere_max(const std::function<double(const Vec&)>& f, Vec theta) {
  double best = f(theta);
  double step = 0.05;
  while (step > 1e-11) {
    bool improved = false;
    const auto basis = orthonormal_complement(Direction::normalize(theta));
    for (int i = 0; i + 1 < theta.dim() && !improved; ++i) {
      for (double sgn : {1.0, -1.0}) {
        const Vec cand = Direction::normalize(theta + basis[static_cast<std::size_t>(i)] * (sgn * step)).vec();
        const double v = f(cand);
        if (v > best) {
          best = v;
          theta = cand;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return theta;
}

std::vector<Vec> random_directions(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = normal(rng);
    if (norm(v) > 1e-8) out.push_back(Direction::normalize(v).vec());
  }
  return out;
}

}  // namespace

double volume(const RadialBody& body, CurvatureModel model, const QuadratureSpec& spec) {
  spec.validate();
  const int n = body.dim();
  const RadialKernel kernel = RadialKernel::volume(n, model);
  const double scale = std::ldexp(1.0, n);
  if (body.isotropic()) return scale * sphere_area(n) * kernel.integral(body.radial(Vec::unit(n, 0)));
  if (body.axis()) {
    const double sub = n == 2 ? 2.0 : sphere_area(n - 1);
    auto f = [&](double phi) {
      return kernel.integral(body.radial_at_cos(std::cos(phi))) * pow_int(std::sin(phi), n - 2);
    };
    return scale * sub * 2.0 * integrate_adaptive(f, 0.0, 0.5 * M_PI, 0.0, kZonalRelTol, 40);
  }
  return scale * sphere_sum(n, spec, [&](const Vec& u) { return kernel.integral(body.radial(u)); });
}

double section_volume(const RadialBody& body, CurvatureModel model, const Direction& xi,
                      const QuadratureSpec& spec) {
  spec.validate();
  const int n = body.dim();
  if (xi.dim() != n) fail(ErrorCode::DimensionMismatch, "direction and body dimensions differ");
  const RadialKernel kernel = RadialKernel::section(n, model);
  const double scale = std::ldexp(1.0, n - 1);
  if (body.isotropic()) {
    const double sub = n == 2 ? 2.0 : sphere_area(n - 1);
    return scale * sub * kernel.integral(body.radial(Vec::unit(n, 0)));
  }
  if (const auto axis = body.axis()) {
    const ZonalFrame fr = zonal_frame(*axis, xi);
    const double sb = std::sin(fr.beta);
    if (n == 2) return scale * 2.0 * kernel.integral(body.radial_at_cos(sb));
    const double sub = n == 3 ? 2.0 : sphere_area(n - 2);
    auto f = [&](double psi) {
      return kernel.integral(body.radial_at_cos(sb * std::cos(psi))) * pow_int(std::sin(psi), n - 3);
    };
    return scale * sub * 2.0 * integrate_adaptive(f, 0.0, 0.5 * M_PI, 0.0, kZonalRelTol, 40);
  }
  return scale * subsphere_sum(xi, spec, [&](const Vec& u) { return kernel.integral(body.radial(u)); });
}

SupportPoint support_point(const RadialBody& body, const Direction& xi) {
  const int n = body.dim();
  if (xi.dim() != n) fail(ErrorCode::DimensionMismatch, "direction and body dimensions differ");
  if (body.isotropic()) {
    const double r = body.radial(xi.vec());
    return {xi.vec() * r, r};
  }
  if (const auto axis = body.axis()) {
    const ZonalFrame fr = zonal_frame(*axis, xi);
    auto dir = [&](double phi) { return fr.a * std::cos(phi) + fr.e * std::sin(phi); };
    auto f = [&](double phi) {
      const Vec t = dir(phi);
      return body.radial(t) * dot(t, xi.vec());
    };
    const double phi = grid_max(f, fr.beta - 0.5 * M_PI, fr.beta + 0.5 * M_PI, 1440);
    const Vec t = dir(phi);
    const Vec x = t * body.radial(t);
    return {x, dot(x, xi.vec())};
  }
  auto f = [&](const Vec& t) { return body.radial(t) * dot(t, xi.vec()); };
  auto cands = random_directions(n, 4000, 17);
  cands.push_back(xi.vec());
  Vec best = xi.vec();
  double fb = f(best);
  for (const Vec& t : cands) {
    const Vec s = dot(t, xi.vec()) < 0.0 ? t * -1.0 : t;
    const double v = f(s);
    if (v > fb) {
      fb = v;
      best = s;
    }
  }
  best = sphere_max(f, best);
  const Vec x = best * body.radial(best);
  return {x, dot(x, xi.vec())};
}

namespace {

// Extreme value of sign * rho over the sphere.
double extreme_radial(const RadialBody& body, double sign) {
  const int n = body.dim();
  if (body.isotropic()) return body.radial(Vec::unit(n, 0));
  if (body.axis()) {
    auto f = [&](double phi) { return sign * body.radial_at_cos(std::cos(phi)); };
    return sign * f(grid_max(f, 0.0, 0.5 * M_PI, 2000));
  }
  auto f = [&](const Vec& t) { return sign * body.radial(t); };
  auto cands = random_directions(n, 20000, 29);
  for (int i = 0; i < n; ++i) cands.push_back(Vec::unit(n, i));
  Vec ones(n);
  for (int i = 0; i < n; ++i) ones[i] = 1.0;
  cands.push_back(Direction::normalize(ones).vec());
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < cands.size(); ++i) ranked.emplace_back(f(cands[i]), i);
  std::partial_sort(ranked.begin(), ranked.begin() + 3, ranked.end(), std::greater<>());
  double best = ranked[0].first;
  for (int k = 0; k < 3; ++k) best = std::max(best, f(sphere_max(f, cands[ranked[static_cast<std::size_t>(k)].second])));
  return sign * best;
}

}  // namespace

double sup_radial(const RadialBody& body) { return extreme_radial(body, 1.0); }

double inf_radial(const RadialBody& body) { return extreme_radial(body, -1.0); }

ProfileEvaluator::ProfileEvaluator(const RadialBody& body, const Direction& xi, int resolution)
    : body_(body), xi_(xi), support_(support_point(body, xi)), resolution_(resolution) {
  const int n = body.dim();
  if (resolution < 4) fail(ErrorCode::InvalidArgument, "profile resolution must be >= 4");
  double bound = body.radius_bound();
  if (!std::isfinite(bound)) bound = 1.01 * sup_radial(body);
  reach_ = norm(support_.point) + 1.001 * bound;
  if (body.isotropic()) {
    axial_ = true;
    support_.point = xi.vec() * support_.value;
  } else if (const auto axis = body.axis()) {
    const ZonalFrame fr = zonal_frame(*axis, xi);
    axial_ = fr.beta < 1e-12;
    zonal_ = !axial_;
    if (axial_) {
      // Rotation invariance puts the slice centers on the axis.
      support_.point = xi.vec() * support_.value;
      return;
    }
    // e: unit direction of the axis projected into xi-perp.
    e_ = Direction::normalize(fr.a - xi.vec() * dot(fr.a, xi.vec())).vec();
    if (n >= 3) {
      const auto basis = orthonormal_complement(xi);
      for (int i = 0; i < n - 1; ++i) {
        const Vec b = basis[static_cast<std::size_t>(i)];
        const Vec r = b - e_ * dot(b, e_);
        if (norm(r) > 0.5) {
          f_ = Direction::normalize(r).vec();
          break;
        }
      }
    }
  }
}

double ProfileEvaluator::boundary_distance(const Vec& center, const Vec& u) const {
  auto f = [&](double r) { return body_.gauge(center + u * r) - 1.0; };
  constexpr int kCoarse = 8;
  double lo = 0.0, flo = f(0.0), hi = 0.0, fhi = 0.0;
  if (flo >= 0.0) return 0.0;
  int crossings = 0;
  double prev = flo, prev_r = 0.0;
  bool bracketed = false;
  for (int j = 1; j <= kCoarse; ++j) {
    const double r = reach_ * j / kCoarse;
    const double v = f(r);
    if ((v >= 0.0) != (prev >= 0.0)) {
      ++crossings;
      if (!bracketed) {
        lo = prev_r;
        flo = prev;
        hi = r;
        fhi = v;
        bracketed = true;
      }
    }
    prev = v;
    prev_r = r;
  }
  if (crossings != 1) {
    fail(ErrorCode::NotStarShapedFromOffset,
         "ray from the slice center crosses the boundary " + std::to_string(crossings) + " times");
  }
  // Illinois variant of regula falsi.
  int side = 0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    double r = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(r > lo && r < hi)) r = 0.5 * (lo + hi);
    const double v = f(r);
    if (v == 0.0) return r;
    if (v < 0.0) {
      lo = r;
      flo = v;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = r;
      fhi = v;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

double ProfileEvaluator::operator()(double z) const {
  const int n = body_.dim();
  const double h = support_.value;
  if (std::abs(z) >= h) return 0.0;
  const Vec center = support_.point * (z / h);
  const double m = n - 1;
  if (axial_) {
    const Vec u = orthonormal_complement(xi_)[0];
    const double r = boundary_distance(center, u);
    if (n == 2) return 2.0 * r;
    return sphere_area(n - 1) * std::pow(r, m) / m;
  }
  if (n == 2) {
    const Vec u = orthonormal_complement(xi_)[0];
    return boundary_distance(center, u) + boundary_distance(center, u * -1.0);
  }
  if (zonal_) {
    // Slices are symmetric about span(axis, xi): reduce to the angle psi
    // between u and e inside xi-perp.
    const GaussRule& rule = gauss_gegenbauer(resolution_, 0.5 * (n - 3));
    const double sub = n == 3 ? 2.0 : sphere_area(n - 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = rule.x[i];
      const Vec u = e_ * t + f_ * std::sqrt(std::max(0.0, 1.0 - t * t));
      sum += rule.w[i] * std::pow(boundary_distance(center, u), m);
    }
    return sub * sum / m;
  }
  QuadratureSpec spec;
  spec.sphere_resolution = std::max(8, resolution_);
  return subsphere_sum(xi_, spec, [&](const Vec& u) { return std::pow(boundary_distance(center, u), m); }) / m;
}

SectionProfile parallel_section_profile(const RadialBody& body, const Direction& xi,
                                        const std::vector<double>& zs, int resolution) {
  const ProfileEvaluator eval(body, xi, resolution);
  SectionProfile p{xi, zs, std::vector<double>(zs.size()), eval.z_max()};
  for (std::size_t i = 0; i < zs.size(); ++i) p.values[i] = eval(zs[i]);
  return p;
}

SectionProfile derivative_stencil_profile(const RadialBody& body, const Direction& xi, int resolution) {
  const ProfileEvaluator eval(body, xi, resolution);
  const double h = 0.01 * eval.z_max();
  SectionProfile p{xi, {}, {}, eval.z_max()};
  for (int j = -8; j <= 8; ++j) {
    p.zs.push_back(0.5 * h * j);
    p.values.push_back(eval(0.5 * h * j));
  }
  return p;
}

double profile_derivative_at_zero(const SectionProfile& profile, int k) {
  if (k < 0 || k > 4) fail(ErrorCode::UnsupportedOrder, "derivative order must lie in [0, 4]");
  const auto& zs = profile.zs;
  auto it = std::find_if(zs.begin(), zs.end(), [](double z) { return z == 0.0; });
  if (it == zs.end()) fail(ErrorCode::InsufficientStencil, "profile has no sample at z = 0");
  const auto i0 = static_cast<std::size_t>(it - zs.begin());
  if (k == 0) return profile.values[i0];
  if (k % 2 == 1) return 0.0;
  if (i0 + 1 >= zs.size()) fail(ErrorCode::InsufficientStencil, "profile has no positive samples");
  const double s = zs[i0 + 1];
  const int need = k == 2 ? 4 : 6;
  std::vector<double> f(static_cast<std::size_t>(2 * need + 1));
  for (int j = -need; j <= need; ++j) {
    const double target = j * s;
    auto hit = std::find_if(zs.begin(), zs.end(), [&](double z) { return std::abs(z - target) <= 1e-9 * s; });
    if (hit == zs.end()) {
      fail(ErrorCode::InsufficientStencil, "profile stencil lacks the sample z = " + std::to_string(target));
    }
    f[static_cast<std::size_t>(j + need)] = profile.values[static_cast<std::size_t>(hit - zs.begin())];
  }
  auto at = [&](int j) { return f[static_cast<std::size_t>(j + need)]; };
  auto d = [&](int m) {  // stencil with spacing m * s
    const double hh = m * s;
    if (k == 2) {
      return (-at(2 * m) + 16.0 * at(m) - 30.0 * at(0) + 16.0 * at(-m) - at(-2 * m)) / (12.0 * hh * hh);
    }
    return (-(at(3 * m) + at(-3 * m)) / 6.0 + 2.0 * (at(2 * m) + at(-2 * m)) - 6.5 * (at(m) + at(-m)) +
            28.0 / 3.0 * at(0)) /
           (hh * hh * hh * hh);
  };
  return (16.0 * d(1) - d(2)) / 15.0;
}

}  // namespace bp
