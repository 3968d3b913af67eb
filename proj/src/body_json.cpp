#include "bpgeom/body_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bpgeom/error.hpp"

namespace bp {

namespace {

void check_keys(const Json& obj, const std::set<std::string>& required, const std::set<std::string>& optional,
                const std::string& where) {
  if (!obj.is_object()) fail(ErrorCode::ParseError, where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!required.count(it.key()) && !optional.count(it.key())) {
      fail(ErrorCode::ParseError, "unknown key '" + it.key() + "' in " + where);
    }
  }
  for (const auto& k : required) {
    if (!obj.contains(k)) fail(ErrorCode::ParseError, "missing key '" + k + "' in " + where);
  }
}

double get_number(const Json& obj, const std::string& key) {
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(ErrorCode::ParseError, "'" + key + "' must be a number");
  return v.get<double>();
}

int get_int(const Json& obj, const std::string& key) {
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) fail(ErrorCode::ParseError, "'" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> get_array(const Json& obj, const std::string& key) {
  const Json& v = obj.at(key);
  if (!v.is_array()) fail(ErrorCode::ParseError, "'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(ErrorCode::ParseError, "'" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Vec to_vec(const std::vector<double>& v, const std::string& key) {
  if (v.size() < 2 || v.size() > static_cast<std::size_t>(kMaxDim)) {
    fail(ErrorCode::UnsupportedDimension, "'" + key + "' needs 2 to 5 entries");
  }
  return Vec(std::span<const double>(v));
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

Json params_json(const RadialBody& body) {
  struct Visitor {
    Json operator()(const shape::Ball& b) const { return {{"rho0", b.rho0}}; }
    Json operator()(const shape::Ellipsoid& e) const { return {{"semiaxes", vec_json(e.semiaxes)}}; }
    Json operator()(const shape::CylinderCaps& c) const { return {{"t0", c.t0}, {"eta", c.eta}}; }
    Json operator()(const shape::ZonalTable& z) const {
      return {{"axis", vec_json(z.axis.vec())}, {"samples", z.samples}};
    }
    Json operator()(const shape::LqBall& l) const { return {{"q", l.q}, {"scale", l.scale}}; }
    Json operator()(const shape::Mapped& m) const {
      Json p = {{"base", body_to_json(*m.base)}, {"sigma", m.sigma}};
      if (m.inverse) p["inverse"] = true;
      return p;
    }
    Json operator()(const shape::Perturbed& p) const {
      return {{"base", body_to_json(*p.base)},
              {"delta", p.delta},
              {"axis", vec_json(p.g.axis().vec())},
              {"g_coefficients", p.g.coeffs()},
              {"epsilon", p.epsilon}};
    }
    Json operator()(const shape::Strictified& s) const {
      return {{"base", body_to_json(*s.base)}, {"alpha", s.alpha}};
    }
    Json operator()(const shape::Dilated& d) const {
      return {{"base", body_to_json(*d.base)}, {"factor", d.factor}};
    }
  };
  return std::visit(Visitor{}, body.shape());
}

void check_dim(const RadialBody& body, int n) {
  if (body.dim() != n) {
    fail(ErrorCode::DimensionMismatch, "body spec declares n = " + std::to_string(n) + " but its data has n = " +
                                           std::to_string(body.dim()));
  }
}

void dump(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + "  " + Json(it.key()).dump() + ": ";
        dump(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad + "  ";
        dump(v[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12e", x);
      out += buf;
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

RadialBody body_from_json(const Json& spec) {
  check_keys(spec, {"n", "shape", "params"}, {}, "body spec");
  const int n = get_int(spec, "n");
  if (n < 2 || n > kMaxDim) fail(ErrorCode::UnsupportedDimension, "n must lie in [2, 5]");
  if (!spec.at("shape").is_string()) fail(ErrorCode::ParseError, "'shape' must be a string");
  const std::string shape = spec.at("shape").get<std::string>();
  const Json& p = spec.at("params");
  const std::string where = shape + " params";

  auto result = [&]() -> RadialBody {
    if (shape == "ball") {
      check_keys(p, {"rho0"}, {}, where);
      return RadialBody::ball(n, get_number(p, "rho0"));
    }
    if (shape == "ellipsoid") {
      check_keys(p, {"semiaxes"}, {}, where);
      return RadialBody::ellipsoid(to_vec(get_array(p, "semiaxes"), "semiaxes"));
    }
    if (shape == "cylinder_caps") {
      check_keys(p, {"t0"}, {"eta"}, where);
      return RadialBody::cylinder_caps(n, get_number(p, "t0"), p.contains("eta") ? get_number(p, "eta") : 0.02);
    }
    if (shape == "zonal_table") {
      check_keys(p, {"axis", "samples"}, {}, where);
      return RadialBody::zonal_table(Direction::normalize(to_vec(get_array(p, "axis"), "axis")),
                                     get_array(p, "samples"));
    }
    if (shape == "lq_ball") {
      check_keys(p, {"q"}, {"scale"}, where);
      return RadialBody::lq_ball(n, get_number(p, "q"), p.contains("scale") ? get_number(p, "scale") : 1.0);
    }
    if (shape == "mapped") {
      check_keys(p, {"base", "sigma"}, {"inverse"}, where);
      bool inverse = false;
      if (p.contains("inverse")) {
        if (!p.at("inverse").is_boolean()) fail(ErrorCode::ParseError, "'inverse' must be a boolean");
        inverse = p.at("inverse").get<bool>();
      }
      return RadialBody::mapped(body_from_json(p.at("base")), get_int(p, "sigma"), inverse);
    }
    if (shape == "perturbed") {
      check_keys(p, {"base", "delta", "axis", "g_coefficients", "epsilon"}, {}, where);
      const Direction axis = Direction::normalize(to_vec(get_array(p, "axis"), "axis"));
      ZonalFunction g(axis, n, get_array(p, "g_coefficients"));
      return RadialBody::perturbed(body_from_json(p.at("base")), CurvatureModel::from_delta(get_int(p, "delta")), g,
                                   get_number(p, "epsilon"));
    }
    if (shape == "strictified") {
      check_keys(p, {"base", "alpha"}, {}, where);
      return RadialBody::strictified(body_from_json(p.at("base")), get_number(p, "alpha"));
    }
    if (shape == "dilated") {
      check_keys(p, {"base", "factor"}, {}, where);
      return RadialBody::dilated(body_from_json(p.at("base")), get_number(p, "factor"));
    }
    fail(ErrorCode::ParseError, "unknown shape '" + shape + "'");
  }();
  check_dim(result, n);
  return result;
}

Json body_to_json(const RadialBody& body) {
  return {{"n", body.dim()}, {"shape", std::string(body.shape_name())}, {"params", params_json(body)}};
}

RadialBody body_from_string(const std::string& text) {
  Json spec;
  try {
    spec = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return body_from_json(spec);
}

RadialBody load_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read body file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return body_from_string(ss.str());
}

std::string canonical_dump(const Json& value) {
  std::string out;
  dump(value, 0, out);
  out += "\n";
  return out;
}

}  // namespace bp
