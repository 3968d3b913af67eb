#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bpgeom/body.hpp"
#include "bpgeom/geometry.hpp"
#include "bpgeom/harmonic.hpp"

namespace bp {

RadialBody build_cylinder_caps(int n, double t0 = 0.5, double eta = 0.02);

struct DefinitenessReport {
  std::vector<Direction> directions;
  std::vector<double> values;
  double min_value;  // over directions with a finite value
  Direction witness;
  // Directions whose slices are not star-shaped from their centers; their
  // values are NaN.
  int skipped;
};

// Sign test of (||x||_K^{-1} / (1 + delta (|x|/||x||_K)^2))^ = (||x||_M^{-1})^,
// M = curvature_map(K, delta), via fourier_minkowski_power(M, n - 2).
// Zonal bodies are probed at `grid` polar angles from the axis; other bodies
// at `grid` directions in the x1x2-plane.
DefinitenessReport positive_definiteness_report(const RadialBody& K, CurvatureModel model, int grid = 16,
                                                int resolution = 64);

struct InequalitySides {
  double lhs;
  double rhs;
};

// a/(1+delta a^2) int_a^b r^{n-2}/(1+delta r^2)^{n-1} dr  versus  int_a^b r^{n-1}/(1+delta r^2)^n dr.
InequalitySides zvavitch_inequality(double a, double b, int delta, int n);

enum class Verdict { consistent, counterexample, inconclusive };
std::string_view verdict_name(Verdict v);

struct CompareTolerance {
  double section = 1e-8;  // absolute, on max(section_K - section_L)
  double volume = 1e-6;   // relative margin on vol_K - vol_L
};

struct BPReport {
  CurvatureModel model = CurvatureModel::euclidean();
  std::vector<Direction> directions;
  std::vector<double> angles;  // polar angle of each direction from the reference axis
  std::vector<double> section_K;
  std::vector<double> section_L;
  double vol_K = 0.0;
  double vol_L = 0.0;
  double max_section_gap = 0.0;
  std::size_t witness = 0;
  Verdict verdict = Verdict::inconclusive;
  CompareTolerance tolerance;
};

// Default direction grid: `count` polar angles in [0, pi/2] about the common
// axis of K and L (e_1 when neither has one), in the plane of the axis and a
// fixed perpendicular.
std::vector<Direction> polar_grid(const RadialBody& K, const RadialBody& L, int count = 128);
std::vector<Direction> polar_grid(const Direction& axis, int count);

BPReport bp_compare(const RadialBody& K, const RadialBody& L, CurvatureModel model,
                    const std::vector<Direction>& directions, const QuadratureSpec& spec = {},
                    CompareTolerance tol = {});

struct PerturbationSpec {
  explicit PerturbationSpec(Direction a) : axis(std::move(a)) {}

  Direction axis;
  double cap_center_angle = 0.0;  // polar angle of the bump center
  double width = 0.3;             // bump standard deviation is width / 2
  double depth = 1.0;             // c_v
  double epsilon = -1.0;          // negative selects epsilon automatically
  int max_degree = kDefaultMaxDegree;
  int max_halvings = 10;
  ConvexitySpec convexity;
};

struct PerturbationResult {
  RadialBody body;
  ZonalFunction v;  // non-positive bump, truncated series
  ZonalFunction g;  // sphere restriction of (r^{-1} v)^ / (2 pi)^n
  double epsilon;
  double v_tail;
  int halvings;
  ConvexFlag certificate;
};

// K with int_0^{rho_K} k = int_0^{rho_L} k + epsilon g, k the section kernel
// of the model. The certificate is h-convexity for delta = -1 and
// e-convexity otherwise; epsilon is halved until it passes.
PerturbationResult perturb_body(const RadialBody& L, CurvatureModel model, const PerturbationSpec& spec);

struct ScaledPair {
  double r;
  double alpha;
  RadialBody K;
  RadialBody L;
};

// r = sqrt((1 - eps)^{-1/n} - 1), alpha = r / max(sup rho_K, sup rho_L).
double scale_radius(double eps, int n);
ScaledPair scale_pair(const RadialBody& K, const RadialBody& L, double eps);

struct HyperbolicParams {
  double t0 = 0.5;
  double eta = 0.02;
  double width = 0.3;
  double depth = 1.0;
  double epsilon = -1.0;
  double alpha_factor = 1e-3;  // strictification alpha = alpha_factor * min rho_L
  int grid = 128;
  int probe_grid = 16;
  std::uint64_t seed = 1;
};

struct SphereParams {
  double q = 4.0;
  double scale = 0.5;
  double alpha_factor = 0.05;
  double width = 0.4;
  double depth = 1.0;
  double epsilon = -1.0;
  int max_degree = 32;
  int resolution = 34;  // exceeds max_degree so section sums of g are exact
  int grid = 16;
  int profile_resolution = 12;
  std::uint64_t seed = 1;
};

struct SphereStage {
  BPReport euclidean;
  double dilation;      // K is shrunk by (1 - dilation) before scaling
  double margin;        // epsilon passed to scale_pair
  double r;
  double alpha;
  double max_radius;    // of the scaled pair
};

struct CounterexampleReport {
  std::string pipeline;
  RadialBody K;
  RadialBody L;
  CurvatureModel model;
  BPReport bp;
  double fourier_min;
  Direction fourier_witness;
  ConvexityVerdict convexity_K;
  ConvexityVerdict convexity_L;
  double epsilon;
  int halvings;
  double v_tail;
  double strict_alpha;
  Verdict verdict;
  std::vector<std::pair<std::string, double>> parameters;
  std::optional<SphereStage> sphere;
};

CounterexampleReport counterexample_hyperbolic(int n, const HyperbolicParams& params = {});
CounterexampleReport counterexample_sphere(int n, const SphereParams& params = {});

}  // namespace bp
