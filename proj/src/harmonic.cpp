#include "bpgeom/harmonic.hpp"

#include <cmath>

#include "bpgeom/error.hpp"

namespace bp {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Value at cosine t of the multiplier image of an expansion.
double transformed_at(const ZonalFunction& f, double p, double t) {
  const int n = f.dim();
  std::vector<double> c;
  gegenbauer_all(f.degree(), f.lambda(), std::min(1.0, std::abs(t)), c);
  double sum = 0.0;
  for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
    sum += f.coeffs()[j] * fourier_multiplier(static_cast<int>(2 * j), p, n) * c[2 * j];
  }
  return sum;
}

// Profile in t = <theta, xi> of the average of h over {<theta, xi> = t}.
std::function<double(double)> average_about(const std::function<double(const Vec&)>& h, const Direction& xi) {
  const int n = xi.dim();
  QuadratureSpec spec;
  spec.sphere_resolution = n == 5 ? 12 : 24;
  const double total = n == 3 ? 2.0 : sphere_area(n - 1);
  return [h, xi, spec, total](double t) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    return subsphere_sum(xi, spec, [&](const Vec& u) { return h(xi.vec() * t + u * s); }) / total;
  };
}

// Expansion of h(theta) as an even zonal profile: about the body axis when
// there is one, otherwise about xi after averaging.
struct Frame {
  ZonalFunction expansion;
  double t;  // <xi, axis>
};

Frame zonal_profile_frame(const RadialBody& body, const std::function<double(double)>& of_radial,
                          const Direction& xi, int max_degree) {
  const int n = body.dim();
  if (n < 3) fail(ErrorCode::UnsupportedDimension, "the zonal multiplier path needs n >= 3");
  if (const auto axis = body.axis()) {
    auto prof = [&](double t) { return of_radial(body.radial_at_cos(t)); };
    return {expand_zonal(prof, *axis, n, max_degree).function, dot(axis->vec(), xi.vec())};
  }
  auto h = [&](const Vec& th) { return of_radial(body.radial(th)); };
  return {expand_zonal(average_about(h, xi), xi, n, max_degree).function, 1.0};
}

}  // namespace

double spherical_radon(const std::function<double(const Vec&)>& f, const Direction& xi, const QuadratureSpec& spec) {
  return subsphere_sum(xi, spec, f);
}

ZonalExpansion expand_zonal(const std::function<double(double)>& f, const Direction& axis, int n, int max_degree,
                            double max_tail) {
  if (max_degree < 0 || max_degree % 2 != 0) fail(ErrorCode::InvalidArgument, "max_degree must be even and >= 0");
  const double lambda = 0.5 * (n - 2);
  const GaussRule& rule = gauss_gegenbauer(std::max(8, 4 * max_degree), lambda);
  std::vector<double> coeffs(static_cast<std::size_t>(max_degree / 2 + 1), 0.0);
  std::vector<double> c;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double fv = f(rule.x[i]);
    gegenbauer_all(max_degree, lambda, rule.x[i], c);
    for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] += rule.w[i] * fv * c[2 * j];
  }
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] /= gegenbauer_norm2(static_cast<int>(2 * j), lambda);
  ZonalFunction series(axis, n, std::move(coeffs));
  double tail = 0.0;
  constexpr int kGrid = 2000;
  for (int i = 0; i <= kGrid; ++i) {
    const double t = static_cast<double>(i) / kGrid;
    tail = std::max(tail, std::abs(f(t) - series.at(t)));
  }
  if (tail > max_tail) {
    fail(ErrorCode::DegreeOverflow, "zonal expansion to degree " + std::to_string(max_degree) +
                                        " leaves tail norm " + std::to_string(tail));
  }
  return {std::move(series), tail};
}

double fourier_multiplier(int m, double p, int n) {
  if (!(p > 0.0 && p < n)) fail(ErrorCode::ParameterOutOfRange, "homogeneity degree must satisfy 0 < p < n");
  const double sign = (m / 2) % 2 == 0 ? 1.0 : -1.0;
  const double log_ratio = std::lgamma(0.5 * (n - p + m)) - std::lgamma(0.5 * (p + m));
  return sign * std::pow(M_PI, 0.5 * n) * std::pow(2.0, n - p) * std::exp(log_ratio);
}

ZonalFunction zonal_fourier(const ZonalFunction& f, double p, int max_degree) {
  if (f.degree() > max_degree) {
    double tail = 0.0;
    for (std::size_t j = static_cast<std::size_t>(max_degree / 2 + 1); j < f.coeffs().size(); ++j) {
      tail += std::abs(f.coeffs()[j]) * gegenbauer_at_one(static_cast<int>(2 * j), f.lambda());
    }
    fail(ErrorCode::DegreeOverflow, "input has degree " + std::to_string(f.degree()) + " > " +
                                        std::to_string(max_degree) + "; tail norm " + std::to_string(tail));
  }
  std::vector<double> c = f.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) c[j] *= fourier_multiplier(static_cast<int>(2 * j), p, f.dim());
  return ZonalFunction(f.axis(), f.dim(), std::move(c));
}

double radon_fourier_consistency(const ZonalFunction& f, int directions, int resolution) {
  const int n = f.dim();
  const ZonalFunction g = zonal_fourier(f, n - 1.0, std::max(kDefaultMaxDegree, f.degree()));
  QuadratureSpec spec;
  spec.sphere_resolution = resolution;
  const Vec e = orthonormal_complement(f.axis())[0];
  double worst = 0.0;
  for (int i = 0; i < directions; ++i) {
    const double beta = 0.5 * M_PI * i / std::max(1, directions - 1);
    const Direction xi = Direction::normalize(f.axis().vec() * std::cos(beta) + e * std::sin(beta));
    const double radon = spherical_radon([&](const Vec& u) { return f(u); }, xi, spec);
    worst = std::max(worst, std::abs(M_PI * radon - g(xi.vec())));
  }
  return worst;
}

double fourier_minkowski_power(const RadialBody& body, int k, const Direction& xi, int resolution) {
  const int n = body.dim();
  if (xi.dim() != n) fail(ErrorCode::DimensionMismatch, "direction and body dimensions differ");
  if (k < 1 || k > 3 || k >= n - 1) {
    fail(ErrorCode::UnsupportedOrder, "order k = " + std::to_string(k) + " needs 1 <= k <= 3 and k < n - 1");
  }
  const ProfileEvaluator eval(body, xi, resolution);
  SectionProfile stencil{xi, {}, {}, eval.z_max()};
  const double step = 0.005 * eval.z_max();
  for (int j = -8; j <= 8; ++j) {
    stencil.zs.push_back(step * j);
    stencil.values.push_back(eval(step * j));
  }
  const double a0 = profile_derivative_at_zero(stencil, 0);
  const double a2 = profile_derivative_at_zero(stencil, 2);
  if (k % 2 == 0) {
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * M_PI * (n - k - 1) * profile_derivative_at_zero(stencil, k);
  }
  const double a4 = profile_derivative_at_zero(stencil, 4);
  const double h = eval.z_max();
  const double cut = (k == 1 ? 1e-3 : 2e-2) * h;
  double head, tail;
  std::function<double(double)> integrand;
  if (k == 1) {
    head = 0.5 * a2 * cut + a4 * cut * cut * cut / 72.0;
    integrand = [&](double z) { return (eval(z) - a0) / (z * z); };
    tail = -a0 / h;
  } else {
    head = a4 / 24.0 * cut;
    integrand = [&](double z) { return (eval(z) - a0 - 0.5 * a2 * z * z) / (z * z * z * z); };
    tail = -a0 / (3.0 * h * h * h) - a2 / (2.0 * h);
  }
  // Subtracting the Taylor part amplifies the slice error by |a0| / z^(k+1).
  const double noise = 1e-12 * std::abs(a0) / std::pow(cut, k);
  const double body_part = integrate_adaptive(integrand, cut, h, noise, 1e-10, 40);
  const double sign = ((k + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * 2.0 * (n - 1 - k) * factorial(k) * (head + body_part + tail);
}

double homogeneous_fourier(const RadialBody& body, double p, const Direction& xi, int max_degree) {
  if (xi.dim() != body.dim()) fail(ErrorCode::DimensionMismatch, "direction and body dimensions differ");
  const Frame fr = zonal_profile_frame(body, [p](double r) { return std::pow(r, p); }, xi, max_degree);
  return transformed_at(fr.expansion, p, fr.t);
}

double section_volume_via_fourier(const RadialBody& body, CurvatureModel model, const Direction& xi,
                                  int max_degree) {
  const int n = body.dim();
  if (xi.dim() != n) fail(ErrorCode::DimensionMismatch, "direction and body dimensions differ");
  const RadialKernel kernel = RadialKernel::section(n, model);
  const Frame fr = zonal_profile_frame(body, [&](double r) { return kernel.integral(r); }, xi, max_degree);
  return std::ldexp(1.0, n - 1) / M_PI * transformed_at(fr.expansion, n - 1.0, fr.t);
}

ParsevalPair parseval_pairing(const RadialBody& K, const RadialBody& L, double p, int nodes) {
  const int n = K.dim();
  if (L.dim() != n) fail(ErrorCode::DimensionMismatch, "Parseval pairing needs bodies of equal dimension");
  if (n != 3 && n != 4) fail(ErrorCode::UnsupportedDimension, "Parseval pairing is implemented for n = 3, 4");
  if (p != 1.0) fail(ErrorCode::ParameterOutOfRange, "Parseval pairing is implemented for p = 1");
  const auto ak = K.axis(), al = L.axis();
  if (!ak || !al) fail(ErrorCode::UnsupportedBody, "Parseval pairing needs bodies of revolution");
  Direction axis = K.isotropic() ? *al : *ak;
  if (!K.isotropic() && !L.isotropic() && std::abs(dot(ak->vec(), al->vec())) < 1.0 - 1e-12) {
    fail(ErrorCode::UnsupportedBody, "Parseval pairing needs a common axis");
  }
  const ZonalFunction l_side =
      expand_zonal([&](double t) { return std::pow(L.radial_at_cos(t), n - 1); }, axis, n).function;
  const Vec e = orthonormal_complement(axis)[0];
  const GaussRule& rule = gauss_gegenbauer(nodes, 0.5 * (n - 2));
  const double sub = sphere_area(n - 1);
  double lhs = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double t = rule.x[i];
    if (t < 0.0) continue;  // the integrand is even in t
    const double mult = t == 0.0 ? 1.0 : 2.0;
    const Direction xi = Direction::normalize(axis.vec() * t + e * std::sqrt(std::max(0.0, 1.0 - t * t)));
    lhs += mult * rule.w[i] * fourier_minkowski_power(K, n - 2, xi) * transformed_at(l_side, n - 1.0, t);
  }
  lhs *= sub;
  auto f = [&](double phi) {
    const double t = std::cos(phi);
    return K.radial_at_cos(t) * std::pow(L.radial_at_cos(t), n - 1) * std::pow(std::sin(phi), n - 2);
  };
  const double rhs = std::pow(2.0 * M_PI, n) * sub * 2.0 * integrate_adaptive(f, 0.0, 0.5 * M_PI, 0.0, 1e-13, 40);
  return {lhs, rhs};
}

}  // namespace bp
