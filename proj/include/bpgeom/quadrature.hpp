#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "bpgeom/error.hpp"
#include "bpgeom/vec.hpp"

namespace bp {

struct QuadratureSpec {
  int sphere_resolution = 64;
  double radial_tolerance = 1e-10;
  int max_subdivisions = 30;

  void validate() const;
};

struct WeightedNodes {
  std::vector<Vec> nodes;
  std::vector<double> weights;

  double total_weight() const;
  std::size_t size() const { return nodes.size(); }
};

// One-dimensional Gauss rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss rule for the weight (1 - t^2)^(lambda - 1/2) on [-1, 1].
// lambda = 1/2 is Gauss-Legendre, lambda = 0 is Gauss-Chebyshev.
// Rules are cached; the returned reference stays valid for the process.
const GaussRule& gauss_gegenbauer(int count, double lambda);
inline const GaussRule& gauss_legendre(int count) { return gauss_gegenbauer(count, 0.5); }

// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

// Product rule on S^{n-1}: uniform in the periodic angle, Gauss in every
// polar angle (weight sin^k folded into a Gegenbauer rule in cos).
WeightedNodes sphere_nodes(int n, const QuadratureSpec& spec);

// Nodes on the great subsphere S^{n-1} ∩ xi-perp.
WeightedNodes subsphere_nodes(const Direction& xi, const QuadratureSpec& spec);

// Sum of w_i f(u_i) over the sphere_nodes / subsphere_nodes rule without
// materializing the node list. Runs in parallel over polar-angle blocks;
// the summation order is fixed, so results do not depend on thread count.
double sphere_sum(int n, const QuadratureSpec& spec, const std::function<double(const Vec&)>& f);
double subsphere_sum(const Direction& xi, const QuadratureSpec& spec, const std::function<double(const Vec&)>& f);

// Reduction of a zonal integral: sum_i w_i f(x_i) approximates
// the integral over S^{n-1} of f(<theta, axis>).
GaussRule zonal_rule(int n, int count);

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634725, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// 21-point Gauss-Kronrod panel with the QUADPACK error heuristic.
template <class F>
Panel gk21(F& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kWgk[10];
  double rg = 0.0;
  double resabs = std::abs(rk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const double y1 = f(c - dx);
    const double y2 = f(c + dx);
    f1[static_cast<std::size_t>(j)] = y1;
    f2[static_cast<std::size_t>(j)] = y2;
    rk += kWgk[static_cast<std::size_t>(j)] * (y1 + y2);
    resabs += kWgk[static_cast<std::size_t>(j)] * (std::abs(y1) + std::abs(y2));
    if (j % 2 == 1) rg += kWg[static_cast<std::size_t>(j / 2)] * (y1 + y2);
  }
  const double mean = 0.5 * rk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[static_cast<std::size_t>(j)] *
              (std::abs(f1[static_cast<std::size_t>(j)] - mean) + std::abs(f2[static_cast<std::size_t>(j)] - mean));
  }
  const double value = rk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((rk - rg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err, depth};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b] (b < a gives
// the signed result). Converged when the error estimate is below
// max(abs_tol, rel_tol * |I|); a panel deeper than max_depth bisections that
// still needs splitting raises ToleranceNotReached.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                          int max_depth = 30) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_adaptive(f, b, a, abs_tol, rel_tol, max_depth);
  std::priority_queue<detail::Panel> queue;
  queue.push(detail::gk21(f, a, b, 0));
  double total = queue.top().value;
  double error = queue.top().error;
  int evaluations = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    const detail::Panel worst = queue.top();
    // Roundoff floor: further splitting cannot help.
    if (worst.error <= 50.0 * std::numeric_limits<double>::epsilon() * std::abs(worst.value)) break;
    if (worst.depth >= max_depth || evaluations > 4000) {
      fail(ErrorCode::ToleranceNotReached,
           "adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
               "] stalled at error " + std::to_string(error));
    }
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gk21(f, worst.a, m, worst.depth + 1);
    const detail::Panel right = detail::gk21(f, m, worst.b, worst.depth + 1);
    evaluations += 2;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed accumulated cancellation in the running total.
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    queue.pop();
  }
  return sum;
}

double integrate_radial(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec);

// r^power / (1 + delta r^2)^denom_power on [0, 1), with its integrals.
// volume kernel: (n-1, n); section kernel: (n-2, n-1).
class RadialKernel {
 public:
  RadialKernel(int power, int denom_power, int delta);
  static RadialKernel volume(int n, CurvatureModel model) {
    return RadialKernel(n - 1, n, model.delta());
  }
  static RadialKernel section(int n, CurvatureModel model) {
    return RadialKernel(n - 2, n - 1, model.delta());
  }

  double operator()(double r) const;
  // Integral over [a, b]; hyperbolic integrals reaching past r = 0.95 are
  // taken in the geodesic-radius variable r = tanh(s/2).
  double integral(double a, double b) const;
  double integral(double b) const { return integral(0.0, b); }
  // Smallest r >= 0 with integral(r) = target (the integral is increasing).
  double inverse(double target, double guess) const;
  int delta() const { return delta_; }

 private:
  int power_;
  int denom_power_;
  int delta_;
};

}  // namespace bp
