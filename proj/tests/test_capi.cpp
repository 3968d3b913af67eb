#include <cmath>
#include <cstring>
#include <string>

#include "bpgeom/bpgeom.h"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Handle {
  bpg_body* b = nullptr;
  ~Handle() { bpg_body_free(b); }
};

std::string take(char* s) {
  std::string out(s);
  bpg_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("bodies load from JSON and report their dimension") {
  Handle h;
  REQUIRE(bpg_body_from_json(R"({"n": 3, "shape": "ball", "params": {"rho0": 0.5}})", &h.b) == BPG_OK);
  int n = 0;
  CHECK(bpg_body_dim(h.b, &n) == BPG_OK);
  CHECK(n == 3);
  const double theta[3] = {0.0, 3.0, 4.0};
  double r = 0.0;
  CHECK(bpg_body_radial(h.b, theta, 3, &r) == BPG_OK);
  CHECK(r == doctest::Approx(0.5));
  char* json = nullptr;
  CHECK(bpg_body_to_json(h.b, &json) == BPG_OK);
  CHECK(take(json).find("\"shape\": \"ball\"") != std::string::npos);
}

TEST_CASE("errors map to status codes and messages") {
  bpg_body* b = nullptr;
  CHECK(bpg_body_from_json("{not json", &b) == BPG_E_PARSE_ERROR);
  CHECK(b == nullptr);
  CHECK(std::strlen(bpg_last_error()) > 0);
  CHECK(bpg_body_load("/nonexistent.json", &b) == BPG_E_IO_ERROR);
  CHECK(std::string(bpg_status_name(BPG_E_NEGATIVITY_NOT_FOUND)) == "NegativityNotFound");
  CHECK(bpg_status_is_numerical(BPG_E_TOLERANCE_NOT_REACHED) == 1);
  CHECK(bpg_status_is_numerical(BPG_E_EPSILON_TOO_LARGE) == 1);
  CHECK(bpg_status_is_numerical(BPG_E_PARSE_ERROR) == 0);
  double v = 0.0;
  CHECK(bpg_volume(nullptr, 0, 0, &v) == BPG_E_INVALID_ARGUMENT);
  Handle h;
  REQUIRE(bpg_body_from_json(R"({"n": 3, "shape": "ball", "params": {"rho0": 1.0}})", &h.b) == BPG_OK);
  CHECK(bpg_body_validate(h.b, -1) == BPG_E_MODEL_DOMAIN_ERROR);
  CHECK(bpg_volume(h.b, 5, 0, &v) == BPG_E_MODEL_DOMAIN_ERROR);
  const double xi[2] = {1.0, 0.0};
  CHECK(bpg_section(h.b, 0, xi, 2, 0, &v) == BPG_E_DIMENSION_MISMATCH);
  char* out = nullptr;
  CHECK(bpg_compare(h.b, h.b, 0, 4, 0, "xml", &out) == BPG_E_UNSUPPORTED_FORMAT);
  CHECK(bpg_counterexample("h", 2, nullptr, "json", &out) == BPG_E_UNSUPPORTED_DIMENSION);
  CHECK(bpg_counterexample("h", 3, R"({"bogus": 1})", "json", &out) == BPG_E_PARSE_ERROR);
}

TEST_CASE("measures through the C API") {
  Handle h;
  REQUIRE(bpg_body_from_json(R"({"n": 3, "shape": "ball", "params": {"rho0": 1.0}})", &h.b) == BPG_OK);
  double v = 0.0;
  CHECK(bpg_volume(h.b, 0, 0, &v) == BPG_OK);
  CHECK(v == doctest::Approx(32.0 * M_PI / 3.0).epsilon(1e-10));
  const double xi[3] = {0.0, 0.0, 2.0};
  CHECK(bpg_section(h.b, 0, xi, 3, 0, &v) == BPG_OK);
  CHECK(v == doctest::Approx(4.0 * M_PI).epsilon(1e-10));
  CHECK(bpg_section_via_fourier(h.b, 0, xi, 3, &v) == BPG_OK);
  CHECK(v == doctest::Approx(4.0 * M_PI).epsilon(1e-6));
  const double zs[3] = {-0.5, 0.0, 0.5};
  double vals[3], zmax = 0.0;
  CHECK(bpg_profile(h.b, xi, 3, zs, 3, 32, vals, &zmax) == BPG_OK);
  CHECK(vals[1] == doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(vals[2] == doctest::Approx(0.75 * M_PI).epsilon(1e-10));
  CHECK(zmax == doctest::Approx(1.0));
  CHECK(bpg_profile_derivative(h.b, xi, 3, 2, 32, &v) == BPG_OK);
  CHECK(v == doctest::Approx(-2.0 * M_PI).epsilon(1e-6));
  CHECK(bpg_radon(h.b, xi, 3, 2.0, 0, &v) == BPG_OK);
  CHECK(v == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  CHECK(bpg_fourier(h.b, 1, xi, 3, 32, &v) == BPG_OK);
  CHECK(v == doctest::Approx(4.0 * M_PI).epsilon(1e-4));
  double lhs = 0.0, rhs = 0.0;
  CHECK(bpg_parseval(h.b, h.b, 1.0, &lhs, &rhs) == BPG_OK);
  CHECK(lhs == doctest::Approx(32.0 * std::pow(M_PI, 4)).epsilon(1e-4));
  CHECK(rhs == doctest::Approx(lhs).epsilon(1e-4));
}

TEST_CASE("reports through the C API") {
  Handle k, l;
  REQUIRE(bpg_body_from_json(R"({"n": 3, "shape": "ball", "params": {"rho0": 0.4}})", &k.b) == BPG_OK);
  REQUIRE(bpg_body_from_json(R"({"n": 3, "shape": "ball", "params": {"rho0": 0.5}})", &l.b) == BPG_OK);
  char* out = nullptr;
  REQUIRE(bpg_compare(k.b, l.b, 1, 4, 0, "json", &out) == BPG_OK);
  const auto j = nlohmann::json::parse(take(out));
  CHECK(j.at("verdict") == "consistent");
  REQUIRE(bpg_compare(k.b, l.b, 1, 4, 0, "csv", &out) == BPG_OK);
  CHECK(take(out).rfind("angle,section_K,section_L,gap", 0) == 0);
  REQUIRE(bpg_convexity(k.b, 200, 16, 3, &out) == BPG_OK);
  CHECK(nlohmann::json::parse(take(out)).at("s_convex") == "yes");
  REQUIRE(bpg_definiteness(k.b, 1, 3, 32, &out) == BPG_OK);
  CHECK(nlohmann::json::parse(take(out)).at("min_value").get<double>() > 0.0);
  REQUIRE(bpg_canonical_json(R"({"b": 1.5, "a": [2]})", &out) == BPG_OK);
  CHECK(take(out) == "{\n  \"a\": [\n    2\n  ],\n  \"b\": 1.500000000000e+00\n}\n");
}
