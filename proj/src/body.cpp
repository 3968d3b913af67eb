#include "bpgeom/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bpgeom/error.hpp"

namespace bp {

namespace {

constexpr double kLateralRadius = 0.70710678118654752440;  // sqrt(2)/2

// C^2 ramp: 0 for u <= -1, u for u >= 1, second derivative 15/16 (1-u^2)^2.
double smooth_ramp(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return u;
  const double u2 = u * u;
  return 15.0 / 16.0 * (0.5 * u2 - u2 * u2 / 6.0 + u2 * u2 * u2 / 30.0) + 0.5 * u + 5.0 / 32.0;
}

// Convex, 1-homogeneous, nondecreasing smooth maximum of two gauges:
// b * F(a/b) with F(t) = 1 + s * ramp((t - 1)/s) >= max(1, t).
double smooth_max(double a, double b, double s) {
  if (s <= 0.0 || a >= b * (1.0 + s)) return std::max(a, b);
  if (a <= b * (1.0 - s)) return b;
  return b * (1.0 + s * smooth_ramp((a / b - 1.0) / s));
}

double cap_gauge(double c, double u) { return c * u + std::sqrt(c * c * u * u + 1.0); }

double cylinder_gauge_on_sphere(const shape::CylinderCaps& cyl, double u) {
  u = std::min(1.0, std::abs(u));
  const double lateral = std::sqrt(2.0 * std::max(0.0, 1.0 - u * u));
  return smooth_max(cap_gauge(cyl.cap_offset, u), lateral, cyl.blend);
}

double lq_norm(const Vec& x, double q) {
  const int n = x.dim();
  if (q == 2.0) return norm(x);
  if (q == 4.0) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (x[i] * x[i]) * (x[i] * x[i]);
    return std::sqrt(std::sqrt(s));
  }
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::pow(std::abs(x[i]) / m, q);
  return m * std::pow(s, 1.0 / q);
}

double spline_eval(const shape::ZonalTable& tab, double phi) {
  const std::size_t n = tab.samples.size();
  const double h = M_PI / static_cast<double>(n - 1);
  std::size_t i = std::min(static_cast<std::size_t>(phi / h), n - 2);
  const double a = (h * static_cast<double>(i + 1) - phi) / h;
  const double b = 1.0 - a;
  return a * tab.samples[i] + b * tab.samples[i + 1] +
         ((a * a * a - a) * tab.second[i] + (b * b * b - b) * tab.second[i + 1]) * h * h / 6.0;
}

bool parallel(const Direction& a, const Direction& b) {
  return std::abs(dot(a.vec(), b.vec())) > 1.0 - 1e-12;
}

double max_abs_series(const ZonalFunction& g) {
  double s = 0.0;
  for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
    s += std::abs(g.coeffs()[j]) * gegenbauer_at_one(static_cast<int>(2 * j), g.lambda());
  }
  return s;
}

}  // namespace

double curvature_radial(double rho, int sigma) { return rho / (1.0 + sigma * rho * rho); }

double inverse_curvature_radial(double rho_mapped, int sigma) {
  const double disc = 1.0 - 4.0 * sigma * rho_mapped * rho_mapped;
  if (disc < 0.0) {
    fail(ErrorCode::ModelDomainError, "radial value " + std::to_string(rho_mapped) +
                                          " is not in the image of the spherical curvature map");
  }
  return 2.0 * rho_mapped / (1.0 + std::sqrt(disc));
}

RadialBody RadialBody::ball(int n, double rho0) {
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "bodies need 2 <= n <= 5");
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) fail(ErrorCode::ParameterOutOfRange, "ball radius must be positive");
  return RadialBody(n, shape::Ball{rho0});
}

RadialBody RadialBody::ellipsoid(const Vec& semiaxes) {
  if (semiaxes.dim() < 2) fail(ErrorCode::UnsupportedDimension, "bodies need 2 <= n <= 5");
  for (int i = 0; i < semiaxes.dim(); ++i) {
    if (!(semiaxes[i] > 0.0)) fail(ErrorCode::ParameterOutOfRange, "ellipsoid semiaxes must be positive");
  }
  return RadialBody(semiaxes.dim(), shape::Ellipsoid{semiaxes});
}

RadialBody RadialBody::cylinder_caps(int n, double t0, double eta) {
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "bodies need 2 <= n <= 5");
  if (!(t0 > 0.0 && t0 < kLateralRadius)) {
    fail(ErrorCode::ParameterOutOfRange, "cylinder half-height must lie in (0, sqrt(2)/2)");
  }
  if (!(eta >= 0.0 && eta < 0.2)) fail(ErrorCode::ParameterOutOfRange, "smoothing window must lie in [0, 0.2)");
  shape::CylinderCaps cyl{t0, eta, (0.5 - t0 * t0) / (2.0 * t0), 0.0};
  if (eta > 0.0) {
    // Convert the polar-angle window into a window on the gauge ratio
    // cap/lateral, which crosses 1 at the rim angle.
    const double phi_rim = std::atan2(kLateralRadius, t0);
    auto ratio = [&](double phi) {
      const double u = std::cos(phi);
      return cap_gauge(cyl.cap_offset, u) / std::sqrt(2.0 * (1.0 - u * u));
    };
    const double d = 1e-6;
    const double slope = std::abs(ratio(phi_rim + d) - ratio(phi_rim - d)) / (2.0 * d);
    cyl.blend = std::min(0.5, eta * slope);
  }
  return RadialBody(n, cyl);
}

RadialBody RadialBody::zonal_table(const Direction& axis, std::vector<double> samples) {
  const std::size_t n = samples.size();
  if (n < 3) fail(ErrorCode::ParameterOutOfRange, "zonal_table needs at least 3 samples");
  for (double s : samples) {
    if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorCode::PositivityError, "zonal_table samples must be positive");
  }
  // Clamped spline, zero slope at both poles (smooth even extension).
  const double h = M_PI / static_cast<double>(n - 1);
  std::vector<double> diag(n), rhs(n), second(n);
  const double k = 6.0 / (h * h);
  diag[0] = 2.0;
  rhs[0] = k * (samples[1] - samples[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    diag[i] = 4.0;
    rhs[i] = k * (samples[i + 1] - 2.0 * samples[i] + samples[i - 1]);
  }
  diag[n - 1] = 2.0;
  rhs[n - 1] = -k * (samples[n - 1] - samples[n - 2]);
  // Thomas algorithm, unit off-diagonals.
  for (std::size_t i = 1; i < n; ++i) {
    const double m = 1.0 / diag[i - 1];
    diag[i] -= m;
    rhs[i] -= m * rhs[i - 1];
  }
  second[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) second[i] = (rhs[i] - second[i + 1]) / diag[i];

  shape::ZonalTable tab{axis, std::move(samples), std::move(second), 0.0};
  double bound = 0.0;
  const int fine = static_cast<int>(16 * n);
  for (int i = 0; i <= fine; ++i) bound = std::max(bound, spline_eval(tab, M_PI * i / fine));
  tab.bound = bound * (1.0 + 1e-9);
  for (int i = 0; i <= fine; ++i) {
    if (!(spline_eval(tab, M_PI * i / fine) > 0.0)) {
      fail(ErrorCode::PositivityError, "zonal_table interpolant is not positive");
    }
  }
  const int dim = axis.dim();
  return RadialBody(dim, std::move(tab));
}

RadialBody RadialBody::lq_ball(int n, double q, double scale) {
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "bodies need 2 <= n <= 5");
  if (!(q >= 1.0) || !std::isfinite(q)) fail(ErrorCode::ParameterOutOfRange, "lq_ball needs q >= 1");
  if (!(scale > 0.0)) fail(ErrorCode::ParameterOutOfRange, "lq_ball scale must be positive");
  return RadialBody(n, shape::LqBall{q, scale});
}

RadialBody RadialBody::mapped(const RadialBody& base, int sigma, bool inverse) {
  if (sigma != 1 && sigma != -1) fail(ErrorCode::ParameterOutOfRange, "curvature map sign must be +1 or -1");
  const bool needs_inside = (!inverse && sigma == -1);
  if (needs_inside && base.radius_bound() >= 1.0) {
    const auto v = validate_body(base, CurvatureModel::euclidean());
    if (v.sup_radial >= 1.0) {
      fail(ErrorCode::ModelDomainError, "curvature map with sigma = -1 needs sup rho < 1");
    }
  }
  if (inverse && sigma == 1 && base.radius_bound() > 0.5) {
    const auto v = validate_body(base, CurvatureModel::euclidean());
    if (v.sup_radial > 0.5) fail(ErrorCode::ModelDomainError, "inverse spherical map needs sup rho <= 1/2");
  }
  return RadialBody(base.dim(), shape::Mapped{std::make_shared<const RadialBody>(base), sigma, inverse});
}

RadialBody RadialBody::perturbed(const RadialBody& base, CurvatureModel model, const ZonalFunction& g,
                                 double epsilon) {
  if (g.dim() != base.dim()) fail(ErrorCode::DimensionMismatch, "perturbation and body dimensions differ");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    fail(ErrorCode::ParameterOutOfRange, "perturbation size must be non-negative");
  }
  return RadialBody(base.dim(),
                    shape::Perturbed{std::make_shared<const RadialBody>(base), model.delta(), g, epsilon});
}

RadialBody RadialBody::strictified(const RadialBody& base, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail(ErrorCode::ParameterOutOfRange, "alpha must be >= 0");
  return RadialBody(base.dim(), shape::Strictified{std::make_shared<const RadialBody>(base), alpha});
}

RadialBody RadialBody::dilated(const RadialBody& base, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) fail(ErrorCode::ParameterOutOfRange, "dilation must be positive");
  return RadialBody(base.dim(), shape::Dilated{std::make_shared<const RadialBody>(base), factor});
}

std::string_view RadialBody::shape_name() const {
  struct Visitor {
    std::string_view operator()(const shape::Ball&) const { return "ball"; }
    std::string_view operator()(const shape::Ellipsoid&) const { return "ellipsoid"; }
    std::string_view operator()(const shape::CylinderCaps&) const { return "cylinder_caps"; }
    std::string_view operator()(const shape::ZonalTable&) const { return "zonal_table"; }
    std::string_view operator()(const shape::LqBall&) const { return "lq_ball"; }
    std::string_view operator()(const shape::Mapped&) const { return "mapped"; }
    std::string_view operator()(const shape::Perturbed&) const { return "perturbed"; }
    std::string_view operator()(const shape::Strictified&) const { return "strictified"; }
    std::string_view operator()(const shape::Dilated&) const { return "dilated"; }
  };
  return std::visit(Visitor{}, shape_);
}

double RadialBody::radial(const Vec& theta) const {
  struct Visitor {
    const Vec& t;
    double operator()(const shape::Ball& b) const { return b.rho0; }
    double operator()(const shape::Ellipsoid& e) const {
      double s = 0.0;
      for (int i = 0; i < t.dim(); ++i) s += (t[i] / e.semiaxes[i]) * (t[i] / e.semiaxes[i]);
      return 1.0 / std::sqrt(s);
    }
    double operator()(const shape::CylinderCaps& c) const { return 1.0 / cylinder_gauge_on_sphere(c, t[0]); }
    double operator()(const shape::ZonalTable& z) const {
      const double u = std::clamp(dot(t, z.axis.vec()), -1.0, 1.0);
      return spline_eval(z, std::acos(u));
    }
    double operator()(const shape::LqBall& l) const { return l.scale / lq_norm(t, l.q); }
    double operator()(const shape::Mapped& m) const {
      const double r = m.base->radial(t);
      if (m.inverse) return inverse_curvature_radial(r, m.sigma);
      if (m.sigma < 0 && r >= 1.0) fail(ErrorCode::ModelDomainError, "mapped body base leaves the unit ball");
      return curvature_radial(r, m.sigma);
    }
    double operator()(const shape::Perturbed& p) const {
      const double r = p.base->radial(t);
      const double shift = p.epsilon == 0.0 ? 0.0 : p.epsilon * p.g(t);
      if (shift == 0.0) return r;
      const int n = t.dim();
      const RadialKernel kernel(n - 2, n - 1, p.delta);
      const double target = kernel.integral(r) + shift;
      if (!(target > 0.0)) fail(ErrorCode::PositivityError, "perturbation drives the radial function to zero");
      return kernel.inverse(target, r);
    }
    double operator()(const shape::Strictified& s) const {
      const double r = s.base->radial(t);
      return r / (1.0 + s.alpha * r);
    }
    double operator()(const shape::Dilated& d) const { return d.factor * d.base->radial(t); }
  };
  return std::visit(Visitor{theta}, shape_);
}

double RadialBody::gauge(const Vec& x) const {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  return r / radial(x * (1.0 / r));
}

bool RadialBody::isotropic() const {
  struct Visitor {
    bool operator()(const shape::Ball&) const { return true; }
    bool operator()(const shape::Ellipsoid& e) const {
      for (int i = 1; i < e.semiaxes.dim(); ++i) {
        if (e.semiaxes[i] != e.semiaxes[0]) return false;
      }
      return true;
    }
    bool operator()(const shape::CylinderCaps&) const { return false; }
    bool operator()(const shape::ZonalTable& z) const {
      for (double s : z.samples) {
        if (s != z.samples[0]) return false;
      }
      return true;
    }
    bool operator()(const shape::LqBall& l) const { return l.q == 2.0; }
    bool operator()(const shape::Mapped& m) const { return m.base->isotropic(); }
    bool operator()(const shape::Perturbed& p) const {
      return p.base->isotropic() && (p.epsilon == 0.0 || p.g.degree() == 0);
    }
    bool operator()(const shape::Strictified& s) const { return s.base->isotropic(); }
    bool operator()(const shape::Dilated& d) const { return d.base->isotropic(); }
  };
  return std::visit(Visitor{}, shape_);
}

std::optional<Direction> RadialBody::axis() const {
  const int n = n_;
  if (isotropic()) return Direction::axis(n, 0);
  struct Visitor {
    int n;
    std::optional<Direction> operator()(const shape::Ball&) const { return Direction::axis(n, 0); }
    std::optional<Direction> operator()(const shape::Ellipsoid& e) const {
      if (n == 2) return Direction::axis(n, 0);
      // Zonal iff all semiaxes but one coincide.
      for (int k = 0; k < n; ++k) {
        double common = -1.0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          if (i == k) continue;
          if (common < 0.0) common = e.semiaxes[i];
          ok = e.semiaxes[i] == common;
        }
        if (ok) return Direction::axis(n, k);
      }
      return std::nullopt;
    }
    std::optional<Direction> operator()(const shape::CylinderCaps&) const { return Direction::axis(n, 0); }
    std::optional<Direction> operator()(const shape::ZonalTable& z) const { return z.axis; }
    std::optional<Direction> operator()(const shape::LqBall&) const { return std::nullopt; }
    std::optional<Direction> operator()(const shape::Mapped& m) const { return m.base->axis(); }
    std::optional<Direction> operator()(const shape::Perturbed& p) const {
      if (p.base->isotropic()) return p.g.axis();
      const auto a = p.base->axis();
      if (a && parallel(*a, p.g.axis())) return a;
      return std::nullopt;
    }
    std::optional<Direction> operator()(const shape::Strictified& s) const { return s.base->axis(); }
    std::optional<Direction> operator()(const shape::Dilated& d) const { return d.base->axis(); }
  };
  return std::visit(Visitor{n}, shape_);
}

double RadialBody::radial_at_cos(double t) const {
  const auto a = axis();
  if (!a) fail(ErrorCode::UnsupportedBody, "body has no axis of revolution");
  t = std::clamp(t, -1.0, 1.0);
  const Vec perp = orthonormal_complement(*a)[0];
  return radial(a->vec() * t + perp * std::sqrt(std::max(0.0, 1.0 - t * t)));
}

double RadialBody::radius_bound() const {
  struct Visitor {
    int n;
    double operator()(const shape::Ball& b) const { return b.rho0; }
    double operator()(const shape::Ellipsoid& e) const {
      double m = 0.0;
      for (int i = 0; i < e.semiaxes.dim(); ++i) m = std::max(m, e.semiaxes[i]);
      return m;
    }
    double operator()(const shape::CylinderCaps& c) const { return std::sqrt(c.t0 * c.t0 + 0.5); }
    double operator()(const shape::ZonalTable& z) const { return z.bound; }
    double operator()(const shape::LqBall& l) const {
      return l.q >= 2.0 ? l.scale * std::pow(static_cast<double>(n), 0.5 - 1.0 / l.q) : l.scale;
    }
    double operator()(const shape::Mapped& m) const {
      const double b = m.base->radius_bound();
      if (m.inverse) {
        if (m.sigma > 0 && b > 0.5) return 1.0;
        return inverse_curvature_radial(b, m.sigma);
      }
      if (m.sigma < 0) return b < 1.0 ? curvature_radial(b, -1) : std::numeric_limits<double>::infinity();
      return curvature_radial(std::min(b, 1.0), 1);
    }
    double operator()(const shape::Perturbed& p) const {
      const double b = p.base->radius_bound();
      if (p.epsilon == 0.0) return b;
      const RadialKernel kernel(n - 2, n - 1, p.delta);
      if (p.delta < 0 && b >= 1.0) return std::numeric_limits<double>::infinity();
      const double target = kernel.integral(std::min(b, p.delta > 0 ? 1.0 : b)) + p.epsilon * max_abs_series(p.g);
      if (p.delta > 0 && target >= kernel.integral(1.0)) return 1.0;
      return kernel.inverse(target, b);
    }
    double operator()(const shape::Strictified& s) const {
      const double b = s.base->radius_bound();
      return b / (1.0 + s.alpha * b);
    }
    double operator()(const shape::Dilated& d) const { return d.factor * d.base->radius_bound(); }
  };
  return std::visit(Visitor{n_}, shape_);
}

double evaluate_radial(const RadialBody& body, const Direction& theta) {
  if (theta.dim() != body.dim()) {
    fail(ErrorCode::DimensionMismatch, "direction has dimension " + std::to_string(theta.dim()) +
                                           ", body has " + std::to_string(body.dim()));
  }
  return body.radial(theta.vec());
}

ValidationResult validate_body(const RadialBody& body, CurvatureModel model) {
  const int n = body.dim();
  static constexpr int kResolution[] = {0, 0, 256, 48, 16, 10};
  QuadratureSpec spec;
  spec.sphere_resolution = kResolution[n];
  std::vector<Vec> dirs = sphere_nodes(n, spec).nodes;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 1000; ++i) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = normal(rng);
    dirs.push_back(Direction::normalize(v).vec());
  }
  if (const auto a = body.axis()) dirs.push_back(a->vec());

  ValidationResult out;
  auto report = [&](ErrorCode code, const Vec& w, const std::string& msg) {
    out.ok = false;
    out.violated = code;
    out.witness = w;
    out.message = msg;
  };
  for (const Vec& t : dirs) {
    double r = 0.0, rm = 0.0;
    try {
      r = body.radial(t);
      rm = body.radial(-t);
    } catch (const Error& e) {
      if (out.ok) report(e.code(), t, e.what());
      continue;
    }
    if (!(r > 0.0) || !std::isfinite(r) || !(rm > 0.0) || !std::isfinite(rm)) {
      if (out.ok) report(ErrorCode::PositivityError, t, "radial function is not positive and finite");
      continue;
    }
    out.sup_radial = std::max({out.sup_radial, r, rm});
    if (std::abs(r - rm) > 1e-9 * r && out.ok) {
      report(ErrorCode::SymmetryError, t, "rho(theta) != rho(-theta) at " + to_string(t));
    }
  }
  if (out.ok && model.delta() != 0 && out.sup_radial > 1.0 - 1e-9) {
    Vec w = dirs.front();
    for (const Vec& t : dirs) {
      if (body.radial(t) >= out.sup_radial) {
        w = t;
        break;
      }
    }
    report(ErrorCode::ModelDomainError,
           w, "sup rho = " + std::to_string(out.sup_radial) + " does not fit inside the model ball");
  }
  return out;
}

void require_valid(const RadialBody& body, CurvatureModel model) {
  const auto v = validate_body(body, model);
  if (!v.ok) fail(*v.violated, v.message);
}

}  // namespace bp
