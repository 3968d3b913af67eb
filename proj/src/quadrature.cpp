#include "bpgeom/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "bpgeom/parallel.hpp"

namespace bp {

void QuadratureSpec::validate() const {
  if (sphere_resolution < 8) fail(ErrorCode::InvalidArgument, "sphere_resolution must be >= 8");
  if (!(radial_tolerance > 0.0)) fail(ErrorCode::InvalidArgument, "radial_tolerance must be positive");
  if (max_subdivisions < 1) fail(ErrorCode::InvalidArgument, "max_subdivisions must be >= 1");
}

double WeightedNodes::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

namespace {

GaussRule build_gegenbauer(int count, double lambda) {
  GaussRule rule;
  rule.x.resize(static_cast<std::size_t>(count));
  rule.w.resize(static_cast<std::size_t>(count));
  if (lambda == 0.0) {
    for (int i = 0; i < count; ++i) {
      rule.x[static_cast<std::size_t>(i)] = -std::cos((2.0 * i + 1.0) * M_PI / (2.0 * count));
      rule.w[static_cast<std::size_t>(i)] = M_PI / count;
    }
    return rule;
  }
  // Golub-Welsch on the symmetric Jacobi matrix of the Gegenbauer family.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(count);
  Eigen::VectorXd off(std::max(count - 1, 0));
  for (int k = 1; k < count; ++k) {
    off(k - 1) = std::sqrt(k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  const double mu0 = std::sqrt(M_PI) * std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0));
  for (int i = 0; i < count; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.x[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.w[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  // Symmetrize: the exact rule is symmetric about 0.
  for (int i = 0; i < count / 2; ++i) {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(count - 1 - i);
    const double x = 0.5 * (rule.x[b] - rule.x[a]);
    const double w = 0.5 * (rule.w[a] + rule.w[b]);
    rule.x[a] = -x;
    rule.x[b] = x;
    rule.w[a] = rule.w[b] = w;
  }
  if (count % 2 == 1) rule.x[static_cast<std::size_t>(count / 2)] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_gegenbauer(int count, double lambda) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "Gauss rule needs at least one node");
  if (lambda < 0.0) fail(ErrorCode::InvalidArgument, "Gegenbauer parameter must be >= 0");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{count, lambda}];
  if (!slot) slot = std::make_unique<GaussRule>(build_gegenbauer(count, lambda));
  return *slot;
}

double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

WeightedNodes sphere_nodes(int n, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 2 || n > kMaxDim) {
    fail(ErrorCode::UnsupportedDimension, "sphere_nodes supports 2 <= n <= 5, got " + std::to_string(n));
  }
  const int res = spec.sphere_resolution;
  // Polar angles phi_1..phi_{n-2}; phi_j carries sin^{n-1-j}, i.e. a
  // Gegenbauer weight with lambda_j = (n-1-j)/2 in t = cos(phi_j).
  std::vector<const GaussRule*> polar;
  for (int j = 1; j <= n - 2; ++j) polar.push_back(&gauss_gegenbauer(res, 0.5 * (n - 1 - j)));

  WeightedNodes out;
  std::size_t total = static_cast<std::size_t>(res);
  for (std::size_t j = 0; j < polar.size(); ++j) total *= static_cast<std::size_t>(res);
  out.nodes.reserve(total);
  out.weights.reserve(total);

  std::vector<int> idx(polar.size(), 0);
  const double dpsi = 2.0 * M_PI / res;
  while (true) {
    Vec base(n);
    double prefix = 1.0;  // product of sines so far
    double w = dpsi;
    for (std::size_t j = 0; j < polar.size(); ++j) {
      const double t = polar[j]->x[static_cast<std::size_t>(idx[j])];
      w *= polar[j]->w[static_cast<std::size_t>(idx[j])];
      base[static_cast<int>(j)] = prefix * t;
      prefix *= std::sqrt(std::max(0.0, 1.0 - t * t));
    }
    for (int k = 0; k < res; ++k) {
      const double psi = dpsi * k;
      Vec v = base;
      v[n - 2] = prefix * std::cos(psi);
      v[n - 1] = prefix * std::sin(psi);
      out.nodes.push_back(v);
      out.weights.push_back(w);
    }
    std::size_t j = 0;
    for (; j < idx.size(); ++j) {
      if (++idx[j] < res) break;
      idx[j] = 0;
    }
    if (j == idx.size()) break;
  }
  return out;
}

WeightedNodes subsphere_nodes(const Direction& xi, const QuadratureSpec& spec) {
  const int n = xi.dim();
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "subsphere_nodes supports 2 <= n <= 5");
  const auto basis = orthonormal_complement(xi);
  WeightedNodes out;
  if (n == 2) {
    out.nodes = {basis[0], -basis[0]};
    out.weights = {1.0, 1.0};
    return out;
  }
  const WeightedNodes low = sphere_nodes(n - 1, spec);
  out.weights = low.weights;
  out.nodes.reserve(low.size());
  for (const Vec& u : low.nodes) {
    Vec v(n);
    for (int i = 0; i < n - 1; ++i) v += basis[static_cast<std::size_t>(i)] * u[i];
    out.nodes.push_back(v);
  }
  return out;
}

namespace {

double product_sum(int m, const QuadratureSpec& spec, const std::function<double(const Vec&)>& f,
                   const std::array<Vec, kMaxDim>* basis) {
  spec.validate();
  const int res = spec.sphere_resolution;
  std::vector<const GaussRule*> polar;
  for (int j = 1; j <= m - 2; ++j) polar.push_back(&gauss_gegenbauer(res, 0.5 * (m - 1 - j)));
  std::size_t blocks = 1;
  for (std::size_t j = 0; j < polar.size(); ++j) blocks *= static_cast<std::size_t>(res);
  const int n = basis ? m + 1 : m;
  const double dpsi = 2.0 * M_PI / res;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    Vec base(m);
    double prefix = 1.0, w = dpsi;
    std::size_t rest = b;
    for (std::size_t j = 0; j < polar.size(); ++j) {
      const auto i = rest % static_cast<std::size_t>(res);
      rest /= static_cast<std::size_t>(res);
      const double t = polar[j]->x[i];
      w *= polar[j]->w[i];
      base[static_cast<int>(j)] = prefix * t;
      prefix *= std::sqrt(std::max(0.0, 1.0 - t * t));
    }
    double sum = 0.0;
    for (int k = 0; k < res; ++k) {
      Vec v = base;
      v[m - 2] = prefix * std::cos(dpsi * k);
      v[m - 1] = prefix * std::sin(dpsi * k);
      if (basis) {
        Vec x(n);
        for (int i = 0; i < m; ++i) x += (*basis)[static_cast<std::size_t>(i)] * v[i];
        sum += f(x);
      } else {
        sum += f(v);
      }
    }
    partial[b] = w * sum;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

double sphere_sum(int n, const QuadratureSpec& spec, const std::function<double(const Vec&)>& f) {
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "sphere_sum supports 2 <= n <= 5");
  return product_sum(n, spec, f, nullptr);
}

double subsphere_sum(const Direction& xi, const QuadratureSpec& spec, const std::function<double(const Vec&)>& f) {
  const int n = xi.dim();
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "subsphere_sum supports 2 <= n <= 5");
  const auto basis = orthonormal_complement(xi);
  if (n == 2) return f(basis[0]) + f(-basis[0]);
  return product_sum(n - 1, spec, f, &basis);
}

GaussRule zonal_rule(int n, int count) {
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "zonal_rule supports 2 <= n <= 5");
  GaussRule rule = gauss_gegenbauer(count, 0.5 * (n - 2));
  const double scale = n == 2 ? 2.0 : sphere_area(n - 1);
  for (double& w : rule.w) w *= scale;
  return rule;
}

double integrate_radial(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec) {
  spec.validate();
  return integrate_adaptive(f, a, b, spec.radial_tolerance, 0.0, spec.max_subdivisions);
}

RadialKernel::RadialKernel(int power, int denom_power, int delta)
    : power_(power), denom_power_(denom_power), delta_(delta) {
  if (delta < -1 || delta > 1) fail(ErrorCode::InvalidArgument, "kernel curvature sign must be -1, 0, +1");
}

double RadialKernel::operator()(double r) const {
  double num = 1.0;
  for (int i = 0; i < power_; ++i) num *= r;
  if (delta_ == 0) return num;
  const double d = 1.0 + delta_ * r * r;
  double den = 1.0;
  for (int i = 0; i < denom_power_; ++i) den *= d;
  return num / den;
}

double RadialKernel::integral(double a, double b) const {
  if (a == b) return 0.0;
  if (delta_ < 0 && (a >= 1.0 || b >= 1.0)) {
    fail(ErrorCode::ModelDomainError, "hyperbolic radial integral reaches the model boundary");
  }
  if (delta_ == 0) {
    const int p = power_ + 1;
    return (std::pow(b, p) - std::pow(a, p)) / p;
  }
  constexpr double kRel = 1e-15;
  if (delta_ < 0 && std::max(a, b) > 0.95) {
    // r = tanh(s/2): dr = (1 - r^2)/2 ds flattens the boundary singularity.
    auto g = [this](double s) {
      const double th = std::tanh(0.5 * s);
      const double ch = std::cosh(0.5 * s);
      double num = 1.0;
      for (int i = 0; i < power_; ++i) num *= th;
      double c2 = 1.0;
      for (int i = 0; i < denom_power_ - 1; ++i) c2 *= ch * ch;
      return 0.5 * num * c2;
    };
    return integrate_adaptive(g, 2.0 * std::atanh(a), 2.0 * std::atanh(b), 0.0, kRel, 40);
  }
  auto f = [this](double r) { return (*this)(r); };
  return integrate_adaptive(f, a, b, 0.0, kRel, 40);
}

double RadialKernel::inverse(double target, double guess) const {
  if (target <= 0.0) {
    if (target == 0.0) return 0.0;
    fail(ErrorCode::PositivityError, "radial integral target is negative");
  }
  const double r_cap = delta_ < 0 ? 1.0 - 1e-15 : (delta_ > 0 ? 1.0 : std::numeric_limits<double>::infinity());
  double r = std::clamp(guess, 1e-300, delta_ == 0 ? guess : r_cap);
  if (!(r > 0.0)) r = 0.5;
  double F = integral(0.0, r);
  double lo = 0.0, flo = 0.0;
  double hi = r, fhi = F;
  // Bracket from the guess.
  if (F < target) {
    lo = r;
    flo = F;
    while (fhi < target) {
      double next;
      if (delta_ == 0) {
        next = 2.0 * hi;
      } else if (delta_ < 0) {
        next = 1.0 - 0.25 * (1.0 - hi);
      } else {
        next = std::min(1.0, 1.0 - 0.25 * (1.0 - hi));
      }
      if (next >= r_cap || next == hi) {
        const double fcap = integral(0.0, r_cap);
        if (fcap < target) fail(ErrorCode::ModelDomainError, "radial integral target exceeds the model ball");
        next = r_cap;
      }
      flo = fhi;
      lo = hi;
      fhi += integral(hi, next);
      hi = next;
    }
    r = lo;
    F = flo;
  }
  // Safeguarded Newton with incremental integrals; F(r) is increasing.
  for (int it = 0; it < 200; ++it) {
    const double fr = F - target;
    if (fr == 0.0) return r;
    if (fr < 0.0) {
      lo = r;
      flo = F;
    } else {
      hi = r;
      fhi = F;
    }
    const double d = (*this)(r);
    double next = d > 0.0 ? r - fr / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-15 * std::max(r, 1e-300) || hi - lo <= 1e-15 * hi) return next;
    F += integral(r, next);
    r = next;
  }
  return r;
}

}  // namespace bp
