#include "bpgeom/bpgeom.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "bpgeom/body_json.hpp"
#include "bpgeom/engine.hpp"
#include "bpgeom/error.hpp"
#include "bpgeom/harmonic.hpp"
#include "bpgeom/measures.hpp"
#include "bpgeom/report.hpp"

struct bpg_body {
  bp::RadialBody body;
};

namespace {

thread_local std::string last_error;

bpg_status to_status(bp::ErrorCode code) { return static_cast<bpg_status>(static_cast<int>(code) + 1); }

template <class F>
bpg_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return BPG_OK;
  } catch (const bp::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return BPG_E_PARSE_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BPG_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return BPG_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) bp::fail(bp::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bp::Direction direction(const double* xi, int n, const bpg_body* body) {
  need(xi, "xi");
  if (n != body->body.dim()) bp::fail(bp::ErrorCode::DimensionMismatch, "xi dimension differs from body");
  bp::Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = xi[i];
  return bp::Direction::normalize(v);
}

bp::QuadratureSpec quadrature(int resolution) {
  bp::QuadratureSpec spec;
  if (resolution > 0) spec.sphere_resolution = resolution;
  spec.validate();
  return spec;
}

bp::CurvatureModel model(int delta) {
  if (delta < -1 || delta > 1) bp::fail(bp::ErrorCode::ModelDomainError, "delta must be -1, 0 or 1");
  return bp::CurvatureModel::from_delta(delta);
}

void read_number(const bp::Json& j, const char* key, double& dst) {
  if (j.contains(key)) dst = j.at(key).get<double>();
}
void read_number(const bp::Json& j, const char* key, int& dst) {
  if (j.contains(key)) dst = j.at(key).get<int>();
}
void read_number(const bp::Json& j, const char* key, std::uint64_t& dst) {
  if (j.contains(key)) dst = j.at(key).get<std::uint64_t>();
}

void check_keys(const bp::Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bp::fail(bp::ErrorCode::ParseError, "parameters must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) bp::fail(bp::ErrorCode::ParseError, "unknown parameter '" + k + "'");
  }
}

}  // namespace

extern "C" {

const char* bpg_last_error(void) { return last_error.c_str(); }

const char* bpg_status_name(int status) {
  if (status == BPG_OK) return "Ok";
  if (status >= 1 && status <= BPG_E_UNSUPPORTED_FORMAT) {
    return bp::error_code_name(static_cast<bp::ErrorCode>(status - 1)).data();
  }
  return "Internal";
}

int bpg_status_is_numerical(int status) {
  if (status >= 1 && status <= BPG_E_UNSUPPORTED_FORMAT) {
    return bp::is_numerical_failure(static_cast<bp::ErrorCode>(status - 1)) ? 1 : 0;
  }
  return 0;
}

void bpg_string_free(char* s) { std::free(s); }

bpg_status bpg_canonical_json(const char* json, char** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = dup(bp::canonical_dump(bp::Json::parse(json)));
  });
}

bpg_status bpg_body_from_json(const char* json, bpg_body** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new bpg_body{bp::body_from_string(json)};
  });
}

bpg_status bpg_body_load(const char* path, bpg_body** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new bpg_body{bp::load_body_file(path)};
  });
}

void bpg_body_free(bpg_body* body) { delete body; }

bpg_status bpg_body_to_json(const bpg_body* body, char** out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    *out = dup(bp::canonical_dump(bp::body_to_json(body->body)));
  });
}

bpg_status bpg_body_dim(const bpg_body* body, int* n) {
  return guarded([&] {
    need(body, "body");
    need(n, "n");
    *n = body->body.dim();
  });
}

bpg_status bpg_body_radial(const bpg_body* body, const double* theta, int n, double* out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    *out = bp::evaluate_radial(body->body, direction(theta, n, body));
  });
}

bpg_status bpg_body_validate(const bpg_body* body, int delta) {
  return guarded([&] {
    need(body, "body");
    bp::require_valid(body->body, model(delta));
  });
}

bpg_status bpg_volume(const bpg_body* body, int delta, int resolution, double* out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    *out = bp::volume(body->body, model(delta), quadrature(resolution));
  });
}

bpg_status bpg_section(const bpg_body* body, int delta, const double* xi, int n, int resolution, double* out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    *out = bp::section_volume(body->body, model(delta), direction(xi, n, body), quadrature(resolution));
  });
}

bpg_status bpg_section_via_fourier(const bpg_body* body, int delta, const double* xi, int n, double* out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    *out = bp::section_volume_via_fourier(body->body, model(delta), direction(xi, n, body));
  });
}

bpg_status bpg_profile(const bpg_body* body, const double* xi, int n, const double* zs, int count, int resolution,
                       double* values, double* z_max) {
  return guarded([&] {
    need(body, "body");
    if (count < 0) bp::fail(bp::ErrorCode::InvalidArgument, "count must be non-negative");
    if (count > 0) {
      need(zs, "zs");
      need(values, "values");
    }
    const bp::ProfileEvaluator eval(body->body, direction(xi, n, body), resolution > 0 ? resolution : 64);
    for (int i = 0; i < count; ++i) values[i] = eval(zs[i]);
    if (z_max) *z_max = eval.z_max();
  });
}

bpg_status bpg_profile_derivative(const bpg_body* body, const double* xi, int n, int k, int resolution,
                                  double* out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    const auto profile =
        bp::derivative_stencil_profile(body->body, direction(xi, n, body), resolution > 0 ? resolution : 64);
    *out = bp::profile_derivative_at_zero(profile, k);
  });
}

bpg_status bpg_radon(const bpg_body* body, const double* xi, int n, double power, int resolution, double* out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    const auto& b = body->body;
    *out = bp::spherical_radon([&](const bp::Vec& t) { return std::pow(b.radial(t), power); },
                               direction(xi, n, body), quadrature(resolution));
  });
}

bpg_status bpg_fourier(const bpg_body* body, int k, const double* xi, int n, int resolution, double* out) {
  return guarded([&] {
    need(body, "body");
    need(out, "out");
    *out = bp::fourier_minkowski_power(body->body, k, direction(xi, n, body), resolution > 0 ? resolution : 64);
  });
}

bpg_status bpg_convexity(const bpg_body* body, int pairs, int points, uint64_t seed, char** json) {
  return guarded([&] {
    need(body, "body");
    need(json, "json");
    bp::ConvexitySpec spec;
    if (pairs > 0) spec.pairs = pairs;
    if (points > 0) spec.points = points;
    spec.seed = seed;
    *json = dup(bp::canonical_dump(bp::convexity_json(bp::classify_convexity(body->body, spec))));
  });
}

bpg_status bpg_definiteness(const bpg_body* body, int delta, int grid, int resolution, char** json) {
  return guarded([&] {
    need(body, "body");
    need(json, "json");
    const auto r = bp::positive_definiteness_report(body->body, model(delta), grid > 0 ? grid : 16,
                                                    resolution > 0 ? resolution : 64);
    *json = dup(bp::canonical_dump(bp::definiteness_json(r)));
  });
}

bpg_status bpg_compare(const bpg_body* K, const bpg_body* L, int delta, int grid, int resolution, const char* format,
                       char** out) {
  return guarded([&] {
    need(K, "K");
    need(L, "L");
    need(out, "out");
    const auto fmt = bp::parse_format(format ? format : "json");
    const auto dirs = bp::polar_grid(K->body, L->body, grid > 0 ? grid : 128);
    const auto report = bp::bp_compare(K->body, L->body, model(delta), dirs, quadrature(resolution));
    *out = dup(bp::render_report(report, fmt, K->body, L->body));
  });
}

bpg_status bpg_counterexample(const char* space, int n, const char* params_json, const char* format, char** out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    const auto fmt = bp::parse_format(format ? format : "json");
    const bp::Json params = params_json ? bp::Json::parse(params_json) : bp::Json::object();
    const std::string s = space;
    bp::CounterexampleReport report = [&] {
      if (s == "h") {
        check_keys(params, {"t0", "eta", "width", "depth", "epsilon", "alpha_factor", "grid", "probe_grid", "seed"});
        bp::HyperbolicParams p;
        read_number(params, "t0", p.t0);
        read_number(params, "eta", p.eta);
        read_number(params, "width", p.width);
        read_number(params, "depth", p.depth);
        read_number(params, "epsilon", p.epsilon);
        read_number(params, "alpha_factor", p.alpha_factor);
        read_number(params, "grid", p.grid);
        read_number(params, "probe_grid", p.probe_grid);
        read_number(params, "seed", p.seed);
        return bp::counterexample_hyperbolic(n, p);
      }
      if (s == "s") {
        check_keys(params, {"q", "scale", "alpha_factor", "width", "depth", "epsilon", "max_degree", "resolution",
                            "grid", "profile_resolution", "seed"});
        bp::SphereParams p;
        read_number(params, "q", p.q);
        read_number(params, "scale", p.scale);
        read_number(params, "alpha_factor", p.alpha_factor);
        read_number(params, "width", p.width);
        read_number(params, "depth", p.depth);
        read_number(params, "epsilon", p.epsilon);
        read_number(params, "max_degree", p.max_degree);
        read_number(params, "resolution", p.resolution);
        read_number(params, "grid", p.grid);
        read_number(params, "profile_resolution", p.profile_resolution);
        read_number(params, "seed", p.seed);
        return bp::counterexample_sphere(n, p);
      }
      bp::fail(bp::ErrorCode::InvalidArgument, "space must be 'h' or 's'");
    }();
    *out = dup(bp::render_report(report, fmt));
  });
}

bpg_status bpg_parseval(const bpg_body* K, const bpg_body* L, double p, double* lhs, double* rhs) {
  return guarded([&] {
    need(K, "K");
    need(L, "L");
    need(lhs, "lhs");
    need(rhs, "rhs");
    const auto r = bp::parseval_pairing(K->body, L->body, p);
    *lhs = r.lhs;
    *rhs = r.rhs;
  });
}

}  // extern "C"
