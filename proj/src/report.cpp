#include "bpgeom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bpgeom/error.hpp"

namespace bp {

namespace {

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

std::string csv(const BPReport& r) {
  std::string out = "angle,section_K,section_L,gap\n";
  for (std::size_t i = 0; i < r.directions.size(); ++i) {
    out += fmt("%.12e", r.angles[i]) + "," + fmt("%.12e", r.section_K[i]) + "," + fmt("%.12e", r.section_L[i]) +
           "," + fmt("%.12e", r.section_K[i] - r.section_L[i]) + "\n";
  }
  return out;
}

// One plot panel: maps data coordinates into a box of the canvas.
struct Panel {
  double x0, y0, w, h;
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return x0 + w * (x - xmin) / (xmax - xmin); }
  double py(double y) const { return y0 + h - h * (y - ymin) / (ymax - ymin); }
};

std::string polyline(const Panel& p, const std::vector<double>& xs, const std::vector<double>& ys,
                     const char* color, const char* extra = "") {
  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) pts += " ";
    pts += fmt("%.3f", p.px(xs[i])) + "," + fmt("%.3f", p.py(ys[i]));
  }
  return std::string("<polyline fill=\"none\" stroke=\"") + color + "\" stroke-width=\"1.5\"" + extra +
         " points=\"" + pts + "\"/>\n";
}

std::string frame(const Panel& p, const std::string& title) {
  std::string s = "<rect x=\"" + fmt("%.3f", p.x0) + "\" y=\"" + fmt("%.3f", p.y0) + "\" width=\"" +
                  fmt("%.3f", p.w) + "\" height=\"" + fmt("%.3f", p.h) +
                  "\" fill=\"none\" stroke=\"#444\" stroke-width=\"0.8\"/>\n";
  s += "<text x=\"" + fmt("%.3f", p.x0) + "\" y=\"" + fmt("%.3f", p.y0 - 6.0) +
       "\" font-family=\"monospace\" font-size=\"12\">" + title + "</text>\n";
  s += "<text x=\"" + fmt("%.3f", p.x0) + "\" y=\"" + fmt("%.3f", p.y0 + p.h + 14.0) +
       "\" font-family=\"monospace\" font-size=\"10\">" + fmt("%.3g", p.xmin) + "</text>\n";
  s += "<text x=\"" + fmt("%.3f", p.x0 + p.w - 30.0) + "\" y=\"" + fmt("%.3f", p.y0 + p.h + 14.0) +
       "\" font-family=\"monospace\" font-size=\"10\">" + fmt("%.3g", p.xmax) + "</text>\n";
  s += "<text x=\"" + fmt("%.3f", p.x0 + p.w + 4.0) + "\" y=\"" + fmt("%.3f", p.y0 + 10.0) +
       "\" font-family=\"monospace\" font-size=\"10\">" + fmt("%.3e", p.ymax) + "</text>\n";
  s += "<text x=\"" + fmt("%.3f", p.x0 + p.w + 4.0) + "\" y=\"" + fmt("%.3f", p.y0 + p.h) +
       "\" font-family=\"monospace\" font-size=\"10\">" + fmt("%.3e", p.ymin) + "</text>\n";
  return s;
}

void range_of(const std::vector<double>& v, double& lo, double& hi) {
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
}

std::string svg(const BPReport& r, const RadialBody& K, const RadialBody& L) {
  std::vector<double> rk, rl, gap;
  for (std::size_t i = 0; i < r.directions.size(); ++i) {
    rk.push_back(K.radial(r.directions[i].vec()));
    rl.push_back(L.radial(r.directions[i].vec()));
    gap.push_back(r.section_K[i] - r.section_L[i]);
  }
  double xmin = 0.0, xmax = 0.0;
  range_of(r.angles, xmin, xmax);
  if (xmax <= xmin) xmax = xmin + 1.0;
  double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
  range_of(rk, rmin, rmax);
  range_of(rl, rmin, rmax);
  const double rpad = std::max(1e-12, 0.05 * (rmax - rmin));
  double gmin = 0.0, gmax = 0.0;
  range_of(gap, gmin, gmax);
  const double gpad = std::max(1e-300, 0.05 * (gmax - gmin));
  if (gmax - gmin <= 0.0) {
    gmin = -1.0;
    gmax = 1.0;
  }
  const Panel top{60.0, 40.0, 560.0, 220.0, xmin, xmax, rmin - rpad, rmax + rpad};
  const Panel bottom{60.0, 320.0, 560.0, 220.0, xmin, xmax, gmin - gpad, gmax + gpad};

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"580\" viewBox=\"0 0 720 580\">\n";
  s += "<rect width=\"720\" height=\"580\" fill=\"white\"/>\n";
  s += frame(top, "radial function vs polar angle (K solid, L dashed)");
  s += polyline(top, r.angles, rk, "#c0392b");
  s += polyline(top, r.angles, rl, "#2c3e50", " stroke-dasharray=\"6,3\"");
  s += frame(bottom, std::string("section gap S_K - S_L, model ") + r.model.letter() + ", verdict " +
                         std::string(verdict_name(r.verdict)));
  s += "<line x1=\"" + fmt("%.3f", bottom.x0) + "\" y1=\"" + fmt("%.3f", bottom.py(0.0)) + "\" x2=\"" +
       fmt("%.3f", bottom.x0 + bottom.w) + "\" y2=\"" + fmt("%.3f", bottom.py(0.0)) +
       "\" stroke=\"#888\" stroke-width=\"1\" stroke-dasharray=\"2,2\"/>\n";
  s += polyline(bottom, r.angles, gap, "#27ae60");
  s += "</svg>\n";
  return s;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "svg") return Format::svg;
  fail(ErrorCode::UnsupportedFormat, "unsupported format '" + std::string(name) + "' (json, csv, svg)");
}

Json direction_json(const Direction& d) { return vec_json(d.vec()); }

Json convexity_json(const ConvexityVerdict& v) {
  Json j = {{"h_convex", std::string(flag_name(v.h_convex()))},
            {"e_convex", std::string(flag_name(v.e_convex()))},
            {"s_convex", std::string(flag_name(v.s_convex()))}};
  Json w = Json::object();
  for (int delta = -1; delta <= 1; ++delta) {
    const auto model = CurvatureModel::from_delta(delta);
    if (const auto& wit = v.witness(model)) {
      w[std::string(1, model.letter())] = {
          {"p", vec_json(wit->p)}, {"q", vec_json(wit->q)}, {"t", wit->t}, {"gauge", wit->gauge}};
    }
  }
  if (!w.empty()) j["witness"] = w;
  return j;
}

Json definiteness_json(const DefinitenessReport& r) {
  Json dirs = Json::array(), vals = Json::array();
  for (std::size_t i = 0; i < r.directions.size(); ++i) {
    dirs.push_back(direction_json(r.directions[i]));
    vals.push_back(std::isfinite(r.values[i]) ? Json(r.values[i]) : Json(nullptr));
  }
  return {{"directions", dirs}, {"values", vals}, {"min_value", r.min_value},
          {"witness", direction_json(r.witness)}, {"skipped", r.skipped}};
}

Json report_json(const BPReport& r) {
  Json dirs = Json::array();
  for (const auto& d : r.directions) dirs.push_back(direction_json(d));
  return {{"model", std::string(1, r.model.letter())},
          {"delta", r.model.delta()},
          {"directions", dirs},
          {"angles", r.angles},
          {"section_K", r.section_K},
          {"section_L", r.section_L},
          {"vol_K", r.vol_K},
          {"vol_L", r.vol_L},
          {"max_section_gap", r.max_section_gap},
          {"witness", {{"index", r.witness}, {"direction", direction_json(r.directions[r.witness])}}},
          {"verdict", std::string(verdict_name(r.verdict))},
          {"tolerance", {{"section", r.tolerance.section}, {"volume_margin", r.tolerance.volume}}}};
}

Json report_json(const CounterexampleReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  Json j = {{"pipeline", r.pipeline},
            {"model", std::string(1, r.model.letter())},
            {"verdict", std::string(verdict_name(r.verdict))},
            {"K", body_to_json(r.K)},
            {"L", body_to_json(r.L)},
            {"bp", report_json(r.bp)},
            {"fourier_min", r.fourier_min},
            {"fourier_witness", direction_json(r.fourier_witness)},
            {"convexity", {{"K", convexity_json(r.convexity_K)}, {"L", convexity_json(r.convexity_L)}}},
            {"epsilon", r.epsilon},
            {"halvings", r.halvings},
            {"v_tail_norm", r.v_tail},
            {"strict_alpha", r.strict_alpha},
            {"parameters", params}};
  if (r.sphere) {
    j["sphere"] = {{"euclidean", report_json(r.sphere->euclidean)},
                   {"dilation", r.sphere->dilation},
                   {"margin", r.sphere->margin},
                   {"r", r.sphere->r},
                   {"alpha", r.sphere->alpha},
                   {"max_radius", r.sphere->max_radius}};
  }
  return j;
}

std::string render_report(const BPReport& r, Format format, const RadialBody& K, const RadialBody& L) {
  switch (format) {
    case Format::json: return canonical_dump(report_json(r));
    case Format::csv: return csv(r);
    case Format::svg: return svg(r, K, L);
  }
  fail(ErrorCode::UnsupportedFormat, "unsupported format");
}

std::string render_report(const CounterexampleReport& r, Format format) {
  switch (format) {
    case Format::json: return canonical_dump(report_json(r));
    case Format::csv: return csv(r.bp);
    case Format::svg: return svg(r.bp, r.K, r.L);
  }
  fail(ErrorCode::UnsupportedFormat, "unsupported format");
}

}  // namespace bp
