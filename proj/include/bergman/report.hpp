#pragma once

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bergman/core.hpp"
#include "json.hpp"

namespace bergman {

using Json = nlohmann::ordered_json;

/// Bounded / GrowthDetected / Inconclusive for sweeps; Pass / Fail for checks.
enum class Verdict { Bounded, GrowthDetected, Inconclusive, Pass, Fail };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "Bounded";
    case Verdict::GrowthDetected: return "GrowthDetected";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
  }
  return "Inconclusive";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "Bounded") return Verdict::Bounded;
  if (s == "GrowthDetected") return Verdict::GrowthDetected;
  if (s == "Inconclusive") return Verdict::Inconclusive;
  if (s == "Pass") return Verdict::Pass;
  if (s == "Fail") return Verdict::Fail;
  throw LabError(ErrorCode::InvalidArgument, "unknown verdict '" + s + "'");
}

using NamedValues = std::vector<std::pair<std::string, double>>;

inline double lookup(const NamedValues& values, const std::string& key,
                     double fallback = std::numeric_limits<double>::quiet_NaN()) {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  return fallback;
}

struct Sample {
  NamedValues params;
  double ratio = 0.0;
  std::string label;
};

struct BoundednessReport {
  std::string experiment;
  Json config = Json::object();
  std::vector<Sample> samples;
  double max_ratio = 0.0;
  double tail_slope = std::numeric_limits<double>::quiet_NaN();
  double grid_stability = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::Inconclusive;
  NamedValues metrics;
  std::vector<std::string> notes;
  double walltime_ms = 0.0;

  double metric(const std::string& key) const { return lookup(metrics, key); }
};

namespace detail {

// JSON has no inf/nan; they travel as strings.
inline Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double number_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw LabError(ErrorCode::InvalidArgument, "bad number '" + s + "'");
  }
  return j.get<double>();
}

inline Json named_to_json(const NamedValues& values) {
  Json out = Json::object();
  for (const auto& [k, v] : values) out[k] = number_to_json(v);
  return out;
}

inline NamedValues named_from_json(const Json& j) {
  NamedValues out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), number_from_json(it.value()));
  return out;
}

inline bool same_number(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

inline bool same_named(const NamedValues& a, const NamedValues& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !same_number(a[i].second, b[i].second)) return false;
  return true;
}

}  // namespace detail

/// Canonical JSON form. `with_walltime = false` drops the only
/// nondeterministic field.
inline Json to_json(const BoundednessReport& r, bool with_walltime = true) {
  Json j = Json::object();
  j["experiment"] = r.experiment;
  j["config"] = r.config;
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json e = Json::object();
    e["params"] = detail::named_to_json(s.params);
    e["ratio"] = detail::number_to_json(s.ratio);
    if (!s.label.empty()) e["label"] = s.label;
    samples.push_back(std::move(e));
  }
  j["samples"] = std::move(samples);
  j["max_ratio"] = detail::number_to_json(r.max_ratio);
  j["tail_slope"] = detail::number_to_json(r.tail_slope);
  j["grid_stability"] = detail::number_to_json(r.grid_stability);
  j["verdict"] = to_string(r.verdict);
  j["metrics"] = detail::named_to_json(r.metrics);
  j["notes"] = r.notes;
  if (with_walltime) j["walltime_ms"] = r.walltime_ms;
  return j;
}

inline BoundednessReport report_from_json(const Json& j) {
  BoundednessReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.config = j.at("config");
  for (const auto& e : j.at("samples")) {
    Sample s;
    s.params = detail::named_from_json(e.at("params"));
    s.ratio = detail::number_from_json(e.at("ratio"));
    if (e.contains("label")) s.label = e.at("label").get<std::string>();
    r.samples.push_back(std::move(s));
  }
  r.max_ratio = detail::number_from_json(j.at("max_ratio"));
  r.tail_slope = detail::number_from_json(j.at("tail_slope"));
  r.grid_stability = detail::number_from_json(j.at("grid_stability"));
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.metrics = detail::named_from_json(j.at("metrics"));
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("walltime_ms")) r.walltime_ms = j.at("walltime_ms").get<double>();
  return r;
}

/// Field-by-field equality with bitwise comparison of every number.
inline bool same_report(const BoundednessReport& a, const BoundednessReport& b) {
  if (a.experiment != b.experiment || a.config != b.config || a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (!detail::same_named(a.samples[i].params, b.samples[i].params)) return false;
    if (!detail::same_number(a.samples[i].ratio, b.samples[i].ratio)) return false;
    if (a.samples[i].label != b.samples[i].label) return false;
  }
  return detail::same_number(a.max_ratio, b.max_ratio) && detail::same_number(a.tail_slope, b.tail_slope) &&
         detail::same_number(a.grid_stability, b.grid_stability) && a.verdict == b.verdict &&
         detail::same_named(a.metrics, b.metrics) && a.notes == b.notes &&
         detail::same_number(a.walltime_ms, b.walltime_ms);
}

/// Flat per-sample table: one column per parameter name (first-seen order), then ratio.
inline std::string to_csv(const BoundednessReport& r) {
  std::vector<std::string> columns;
  for (const auto& s : r.samples)
    for (const auto& [k, v] : s.params)
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  std::ostringstream out;
  out.precision(17);
  for (const auto& c : columns) out << c << ',';
  out << "ratio\n";
  for (const auto& s : r.samples) {
    for (const auto& c : columns) {
      const double v = lookup(s.params, c);
      if (!std::isnan(v)) out << v;
      out << ',';
    }
    out << s.ratio << '\n';
  }
  return out.str();
}

}  // namespace bergman
