#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "bpgeom/quadrature.hpp"
#include "bpgeom/vec.hpp"
#include "bpgeom/zonal.hpp"

namespace bp {

class RadialBody;

namespace shape {

struct Ball {
  double rho0;
};

struct Ellipsoid {
  Vec semiaxes;
};

// Circular cylinder of radius sqrt(2)/2 about x_1 for |x_1| <= t0, closed by
// caps lying on spheres through antipodal points of the unit sphere
// (center -+ cap_offset * e_1, radius sqrt(cap_offset^2 + 1)). The rim is
// rounded by a smooth maximum of the two gauges.
struct CylinderCaps {
  double t0;
  double eta;
  double cap_offset;  // c = (1/2 - t0^2) / (2 t0)
  double blend;       // half-width of the gauge-ratio window around 1
};

// Radial profile tabulated at equally spaced polar angles phi_i = i*pi/(N-1)
// from the axis, interpolated by a clamped (zero end slope) cubic spline.
struct ZonalTable {
  Direction axis;
  std::vector<double> samples;
  std::vector<double> second;  // spline second derivatives
  double bound;                // max of the interpolant
};

struct LqBall {
  double q;
  double scale;
};

// rho / (1 + sigma rho^2), or its inverse when `inverse` is set.
struct Mapped {
  std::shared_ptr<const RadialBody> base;
  int sigma;
  bool inverse;
};

// rho_K solves  I(rho_K) = I(rho_base) + epsilon * g  with
// I(r) = int_0^r s^{n-2} / (1 + delta s^2)^{n-1} ds.
struct Perturbed {
  std::shared_ptr<const RadialBody> base;
  int delta;
  ZonalFunction g;
  double epsilon;
};

// Gauge ||x||_base + alpha |x|.
struct Strictified {
  std::shared_ptr<const RadialBody> base;
  double alpha;
};

struct Dilated {
  std::shared_ptr<const RadialBody> base;
  double factor;
};

}  // namespace shape

// Origin-symmetric star body described by its radial function on S^{n-1}.
// Immutable; derived shapes share their (immutable) base.
class RadialBody {
 public:
  using Shape = std::variant<shape::Ball, shape::Ellipsoid, shape::CylinderCaps, shape::ZonalTable,
                             shape::LqBall, shape::Mapped, shape::Perturbed, shape::Strictified,
                             shape::Dilated>;

  static RadialBody ball(int n, double rho0);
  static RadialBody ellipsoid(const Vec& semiaxes);
  static RadialBody cylinder_caps(int n, double t0, double eta);
  static RadialBody zonal_table(const Direction& axis, std::vector<double> samples);
  static RadialBody lq_ball(int n, double q, double scale);
  static RadialBody mapped(const RadialBody& base, int sigma, bool inverse = false);
  static RadialBody perturbed(const RadialBody& base, CurvatureModel model, const ZonalFunction& g,
                              double epsilon);
  static RadialBody strictified(const RadialBody& base, double alpha);
  static RadialBody dilated(const RadialBody& base, double factor);

  int dim() const { return n_; }
  const Shape& shape() const { return shape_; }
  std::string_view shape_name() const;

  // rho(theta) for a unit vector theta (length is not re-checked here).
  double radial(const Vec& theta) const;
  // Minkowski functional ||x|| = |x| / rho(x/|x|).
  double gauge(const Vec& x) const;

  // Axis of rotational symmetry, if any. Isotropic bodies report e_1.
  std::optional<Direction> axis() const;
  bool isotropic() const;
  // Radial value in a direction making cosine t with the axis (zonal only).
  double radial_at_cos(double t) const;

  // Cheap upper bound for sup rho (exact for most shapes).
  double radius_bound() const;

 private:
  RadialBody(int n, Shape s) : n_(n), shape_(std::move(s)) {}
  int n_;
  Shape shape_;
};

// Checked evaluation: theta must have the body's dimension.
double evaluate_radial(const RadialBody& body, const Direction& theta);

// Radial map of the curvature classes, rho / (1 + sigma rho^2), and its inverse.
double curvature_radial(double rho, int sigma);
double inverse_curvature_radial(double rho_mapped, int sigma);

struct ValidationResult {
  bool ok = true;
  std::optional<ErrorCode> violated;
  std::optional<Vec> witness;
  std::string message;
  double sup_radial = 0.0;
};

// Positivity, symmetry and (for delta != 0) sup rho <= 1 - 1e-9 on a dense
// direction sample.
ValidationResult validate_body(const RadialBody& body, CurvatureModel model);
// Throws the violated invariant's error code.
void require_valid(const RadialBody& body, CurvatureModel model);

}  // namespace bp
