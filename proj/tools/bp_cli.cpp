// Command-line front end over the C API.
//
// Exit status: 0 success, 1 I/O or internal failure, 2 invalid input,
// 3 numerical failure. Failures print a JSON error object on stderr.

#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bpgeom/bpgeom.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Failure {
  int status;
  std::string message;
};

int exit_code(int status) {
  if (status == BPG_OK) return kExitOk;
  if (status == BPG_E_IO_ERROR || status == BPG_E_INTERNAL) return kExitOther;
  return bpg_status_is_numerical(status) ? kExitNumerical : kExitInvalid;
}

void check(int status) {
  if (status != BPG_OK) throw Failure{status, bpg_last_error()};
}

struct BodyDeleter {
  void operator()(bpg_body* b) const { bpg_body_free(b); }
};
using Body = std::unique_ptr<bpg_body, BodyDeleter>;

Body load(const std::string& path) {
  bpg_body* b = nullptr;
  check(bpg_body_load(path.c_str(), &b));
  return Body(b);
}

int dim(const Body& b) {
  int n = 0;
  check(bpg_body_dim(b.get(), &n));
  return n;
}

std::string take(char* s) {
  std::string out(s);
  bpg_string_free(s);
  return out;
}

std::string canonical(const Json& j) {
  char* out = nullptr;
  check(bpg_canonical_json(j.dump().c_str(), &out));
  return take(out);
}

int delta_of(const std::string& model) {
  if (model == "h") return -1;
  if (model == "e") return 0;
  return 1;
}

struct Options {
  std::string model = "e";
  int n = 0;
  std::string body, K, L, out, format = "json", space = "h";
  std::vector<double> xi;
  std::vector<double> zs;
  std::vector<std::string> params;
  int grid = 0;
  int resolution = 0;
  int count = 21;
  int pairs = 0;
  int points = 0;
  std::optional<int> k;
  std::optional<double> power;
  std::uint64_t seed = 1;
};

// xi defaults to the last coordinate axis.
std::vector<double> direction(const Options& o, int n) {
  if (o.xi.empty()) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e.back() = 1.0;
    return e;
  }
  if (static_cast<int>(o.xi.size()) != n) throw Failure{BPG_E_DIMENSION_MISMATCH, "--xi has the wrong length"};
  return o.xi;
}

void require_dim(const Options& o, const Body& b) {
  if (o.n != 0 && o.n != dim(b)) throw Failure{BPG_E_DIMENSION_MISMATCH, "--n differs from the body dimension"};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Failure{BPG_E_IO_ERROR, "cannot open '" + o.out + "' for writing"};
  f << text;
  if (!f) throw Failure{BPG_E_IO_ERROR, "write to '" + o.out + "' failed"};
}

void run_volume(const Options& o) {
  const Body b = load(o.body);
  require_dim(o, b);
  double v = 0.0;
  check(bpg_volume(b.get(), delta_of(o.model), o.resolution, &v));
  emit(o, canonical({{"model", o.model}, {"n", dim(b)}, {"volume", v}}));
}

void run_section(const Options& o) {
  const Body b = load(o.body);
  require_dim(o, b);
  const auto xi = direction(o, dim(b));
  double v = 0.0;
  check(bpg_section(b.get(), delta_of(o.model), xi.data(), dim(b), o.resolution, &v));
  emit(o, canonical({{"model", o.model}, {"n", dim(b)}, {"xi", xi}, {"section", v}}));
}

void run_profile(const Options& o) {
  const Body b = load(o.body);
  require_dim(o, b);
  const auto xi = direction(o, dim(b));
  double z_max = 0.0;
  check(bpg_profile(b.get(), xi.data(), dim(b), nullptr, 0, o.resolution, nullptr, &z_max));
  std::vector<double> zs = o.zs;
  if (zs.empty()) {
    // Uniform offsets strictly inside the support, where slices are star-shaped.
    for (int i = 0; i < o.count; ++i) zs.push_back(o.count == 1 ? 0.0 : -0.5 * z_max + z_max * i / (o.count - 1));
  }
  std::vector<double> values(zs.size());
  check(bpg_profile(b.get(), xi.data(), dim(b), zs.data(), static_cast<int>(zs.size()), o.resolution, values.data(),
                    nullptr));
  Json j = {{"n", dim(b)}, {"xi", xi}, {"z_max", z_max}, {"zs", zs}, {"values", values}};
  if (o.k) {
    double d = 0.0;
    check(bpg_profile_derivative(b.get(), xi.data(), dim(b), *o.k, o.resolution, &d));
    j["k"] = *o.k;
    j["derivative_at_zero"] = d;
  }
  emit(o, canonical(j));
}

void run_radon(const Options& o) {
  const Body b = load(o.body);
  require_dim(o, b);
  const auto xi = direction(o, dim(b));
  const double p = o.power.value_or(dim(b) - 1.0);
  double v = 0.0;
  check(bpg_radon(b.get(), xi.data(), dim(b), p, o.resolution, &v));
  emit(o, canonical({{"n", dim(b)}, {"xi", xi}, {"power", p}, {"radon", v}}));
}

void run_fourier(const Options& o) {
  const Body b = load(o.body);
  require_dim(o, b);
  const int k = o.k.value_or(1);
  if (o.grid > 0) {
    char* out = nullptr;
    check(bpg_definiteness(b.get(), delta_of(o.model), o.grid, o.resolution, &out));
    emit(o, take(out));
    return;
  }
  const auto xi = direction(o, dim(b));
  double v = 0.0;
  check(bpg_fourier(b.get(), k, xi.data(), dim(b), o.resolution, &v));
  emit(o, canonical({{"n", dim(b)}, {"xi", xi}, {"k", k}, {"fourier", v}}));
}

void run_convexity(const Options& o) {
  const Body b = load(o.body);
  require_dim(o, b);
  char* out = nullptr;
  check(bpg_convexity(b.get(), o.pairs, o.points, o.seed, &out));
  emit(o, take(out));
}

void run_compare(const Options& o) {
  const Body K = load(o.K);
  const Body L = load(o.L);
  require_dim(o, K);
  char* out = nullptr;
  check(bpg_compare(K.get(), L.get(), delta_of(o.model), o.grid, o.resolution, o.format.c_str(), &out));
  emit(o, take(out));
}

void run_counterexample(const Options& o) {
  Json params = Json::object();
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Failure{BPG_E_INVALID_ARGUMENT, "--param expects key=value, got '" + kv + "'"};
    try {
      params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw Failure{BPG_E_INVALID_ARGUMENT, "--param value is not a number: '" + kv + "'"};
    }
  }
  if (o.grid > 0) params["grid"] = o.grid;
  params["seed"] = o.seed;
  const int n = o.n != 0 ? o.n : (o.space == "s" ? 5 : 3);
  char* out = nullptr;
  check(bpg_counterexample(o.space.c_str(), n, params.dump().c_str(), o.format.c_str(), &out));
  emit(o, take(out));
}

void run_parseval(const Options& o) {
  const Body K = load(o.K);
  const Body L = load(o.L);
  require_dim(o, K);
  double lhs = 0.0, rhs = 0.0;
  check(bpg_parseval(K.get(), L.get(), o.power.value_or(1.0), &lhs, &rhs));
  emit(o, canonical({{"n", dim(K)}, {"lhs", lhs}, {"rhs", rhs}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Section and volume comparisons of star bodies in the constant-curvature ball models"};
  app.require_subcommand(1, 1);
  Options o;

  const auto model = [&](CLI::App* c) {
    c->add_option("--model", o.model, "curvature model: e, h or s")->check(CLI::IsMember({"e", "h", "s"}));
  };
  const auto common = [&](CLI::App* c) {
    c->add_option("--n", o.n, "expected dimension")->check(CLI::Range(2, 5));
    c->add_option("--resolution", o.resolution, "sphere quadrature resolution")->check(CLI::NonNegativeNumber);
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--out", o.out, "output file (default stdout)");
  };
  const auto one_body = [&](CLI::App* c) { c->add_option("--body", o.body, "body JSON file")->required(); };
  const auto two_bodies = [&](CLI::App* c) {
    c->add_option("--K", o.K, "body K JSON file")->required();
    c->add_option("--L", o.L, "body L JSON file")->required();
  };
  const auto xi = [&](CLI::App* c) {
    c->add_option("--xi", o.xi, "direction, comma separated")->delimiter(',');
  };

  auto* volume = app.add_subcommand("volume", "delta-volume of a body");
  model(volume), common(volume), one_body(volume);
  auto* section = app.add_subcommand("section", "delta-volume of a central section");
  model(section), common(section), one_body(section), xi(section);
  auto* profile = app.add_subcommand("profile", "parallel section function A(z)");
  common(profile), one_body(profile), xi(profile);
  profile->add_option("--z", o.zs, "offsets, comma separated")->delimiter(',');
  profile->add_option("--count", o.count, "number of uniform offsets")->check(CLI::Range(1, 100000));
  profile->add_option("--k", o.k, "also report the k-th derivative at 0")->check(CLI::Range(0, 4));
  auto* radon = app.add_subcommand("radon", "spherical Radon transform of rho^power");
  common(radon), one_body(radon), xi(radon);
  radon->add_option("--power", o.power, "exponent (default n - 1)");
  auto* fourier = app.add_subcommand("fourier", "Fourier transform of ||x||^(-n+k) at xi, or a definiteness scan");
  model(fourier), common(fourier), one_body(fourier), xi(fourier);
  fourier->add_option("--k", o.k, "order")->check(CLI::Range(1, 3));
  fourier->add_option("--grid", o.grid, "scan this many directions instead")->check(CLI::NonNegativeNumber);
  auto* convexity = app.add_subcommand("convexity", "sampled e/h/s-convexity flags");
  common(convexity), one_body(convexity);
  convexity->add_option("--pairs", o.pairs, "sampled point pairs")->check(CLI::NonNegativeNumber);
  convexity->add_option("--points", o.points, "points per geodesic")->check(CLI::NonNegativeNumber);
  auto* compare = app.add_subcommand("compare", "section and volume comparison of K and L");
  model(compare), common(compare), two_bodies(compare);
  compare->add_option("--grid", o.grid, "direction count")->check(CLI::NonNegativeNumber);
  compare->add_option("--format", o.format, "json, csv or svg");
  auto* counter = app.add_subcommand("counterexample", "build and verify a counterexample pair");
  common(counter);
  counter->add_option("--space", o.space, "h or s")->check(CLI::IsMember({"h", "s"}));
  counter->add_option("--grid", o.grid, "comparison direction count")->check(CLI::NonNegativeNumber);
  counter->add_option("--format", o.format, "json, csv or svg");
  counter->add_option("--param", o.params, "pipeline parameter override key=value");
  auto* parseval = app.add_subcommand("parseval", "both sides of the Parseval pairing");
  common(parseval), two_bodies(parseval);
  parseval->add_option("--power", o.power, "homogeneity p (1 only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*volume) run_volume(o);
    if (*section) run_section(o);
    if (*profile) run_profile(o);
    if (*radon) run_radon(o);
    if (*fourier) run_fourier(o);
    if (*convexity) run_convexity(o);
    if (*compare) run_compare(o);
    if (*counter) run_counterexample(o);
    if (*parseval) run_parseval(o);
  } catch (const Failure& f) {
    const int rc = exit_code(f.status);
    const Json err = {{"error", {{"code", bpg_status_name(f.status)}, {"status", f.status}, {"message", f.message}}},
                      {"exit", rc}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return rc;
  }
  return kExitOk;
}
