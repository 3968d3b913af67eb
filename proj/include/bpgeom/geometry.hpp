#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "bpgeom/body.hpp"

namespace bp {

struct GeodesicSpec {
  Vec p;
  Vec q;
  CurvatureModel model;
};

// Circle carrying the geodesic in the plane of p, q and the origin, in plane
// coordinates (first basis vector along p). `straight` marks a line segment.
struct GeodesicCircle {
  bool straight = true;
  double cx = 0.0, cy = 0.0, radius = 0.0;
};

// Point at fraction t of the Euclidean arc length of the delta-geodesic
// segment from p to q. t = 0 and t = 1 return p and q exactly.
Vec geodesic_point(const GeodesicSpec& spec, double t);
GeodesicCircle geodesic_circle(const GeodesicSpec& spec);

// Radial map rho -> rho / (1 + sigma rho^2) and its inverse.
RadialBody curvature_map(const RadialBody& body, int sigma);
RadialBody inverse_curvature_map(const RadialBody& body, int sigma);

enum class ConvexFlag { yes, no, boundary, undefined };
std::string_view flag_name(ConvexFlag f);

struct ConvexitySpec {
  int pairs = 2000;
  int points = 64;
  double tau = 1e-9;
  // Pairs whose chord is shorter than tau_margin * sup rho are skipped.
  double tau_margin = 1e-6;
  std::uint64_t seed = 1;
};

struct ConvexityWitness {
  Vec p;
  Vec q;
  double t;
  double gauge;
};

struct ConvexityVerdict {
  // Indexed by delta + 1: h, e, s.
  std::array<ConvexFlag, 3> flags{ConvexFlag::undefined, ConvexFlag::undefined, ConvexFlag::undefined};
  std::array<std::optional<ConvexityWitness>, 3> witnesses;

  ConvexFlag flag(CurvatureModel m) const { return flags[static_cast<std::size_t>(m.delta() + 1)]; }
  const std::optional<ConvexityWitness>& witness(CurvatureModel m) const {
    return witnesses[static_cast<std::size_t>(m.delta() + 1)];
  }
  ConvexFlag e_convex() const { return flags[1]; }
  ConvexFlag h_convex() const { return flags[0]; }
  ConvexFlag s_convex() const { return flags[2]; }
};

// Sampled geodesic-containment certificate for one model. Returns undefined
// for delta != 0 when the body does not fit in the open unit ball.
ConvexFlag classify_in_model(const RadialBody& body, CurvatureModel model, const ConvexitySpec& spec,
                             std::optional<ConvexityWitness>* witness = nullptr);
ConvexityVerdict classify_convexity(const RadialBody& body, const ConvexitySpec& spec = {});

}  // namespace bp
