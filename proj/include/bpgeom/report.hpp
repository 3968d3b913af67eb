#pragma once

#include <string>
#include <string_view>

#include "bpgeom/body_json.hpp"
#include "bpgeom/engine.hpp"

namespace bp {

enum class Format { json, csv, svg };
Format parse_format(std::string_view name);

Json direction_json(const Direction& d);
Json convexity_json(const ConvexityVerdict& v);
Json definiteness_json(const DefinitenessReport& r);
Json report_json(const BPReport& r);
Json report_json(const CounterexampleReport& r);

// JSON: canonical dump. CSV: angle,section_K,section_L,gap per direction.
// SVG: radial profiles of K and L over the report's directions above the
// section-gap curve with a zero reference line. Output is byte-stable.
std::string render_report(const BPReport& r, Format format, const RadialBody& K, const RadialBody& L);
std::string render_report(const CounterexampleReport& r, Format format);

}  // namespace bp
