#pragma once

#include <algorithm>
#include <functional>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>
#include <json.hpp>

#include "ruledkit/classification.hpp"
#include "ruledkit/frenet.hpp"
#include "ruledkit/singular.hpp"
#include "ruledkit/spec_format.hpp"

namespace ruledkit {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct InvariantSummary {
  double min = 0.0;
  double max = 0.0;
  std::vector<double> zeros;

  bool operator==(const InvariantSummary&) const = default;
};

struct PointReport {
  SingularityReport report;
  std::optional<CurveType> curve_type;

  bool operator==(const PointReport&) const = default;
};

struct AnalysisReport {
  int schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string spec_hash;
  Tolerances tolerances;
  Interval domain;
  int samples = 0;
  int order = 0;
  double lambda = 0.0;
  bool developable = false;
  InvariantSummary kappa1, tau0, tau1;
  SingularLocus locus;
  std::vector<PointReport> points;

  bool has_unresolved() const {
    return std::any_of(points.begin(), points.end(), [](const PointReport& p) { return p.report.label == Label::Unresolved; });
  }

  bool operator==(const AnalysisReport&) const = default;
};

namespace detail {

inline InvariantSummary summarize(const std::vector<double>& s, const std::vector<double>& v,
                                  const std::function<double(double)>& f) {
  InvariantSummary out;
  out.min = *std::min_element(v.begin(), v.end());
  out.max = *std::max_element(v.begin(), v.end());
  double scale = 0.0;
  for (double x : v) scale = std::fmax(scale, std::fabs(x));
  if (scale <= 1e-12) return out;  // identically zero: no isolated zeros
  for (size_t i = 0; i < s.size(); ++i) {
    if (v[i] == 0.0) {
      out.zeros.push_back(s[i]);
    } else if (i + 1 < s.size() && v[i] * v[i + 1] < 0.0) {
      out.zeros.push_back(refine_bracket(f, s[i], s[i + 1]));
    }
  }
  return out;
}

}  // namespace detail

/// Invariants, singular locus and per-point classification of a spec's surface.
inline AnalysisReport analyze(const SurfaceSpec& spec, const Tolerances& tol = kDefaultTolerances,
                              std::optional<int> order = std::nullopt, double lambda = 0.0) {
  const RuledCurve c = build_surface(spec, lambda);
  AnalysisReport r;
  r.spec_hash = spec_hash(spec.source_text);
  r.tolerances = tol;
  r.domain = c.domain();
  r.samples = spec.samples;
  r.order = std::min(order.value_or(spec.order), c.max_order() - 2);
  r.lambda = lambda;

  const std::vector<double> s = sample_grid(c.domain(), spec.samples);
  std::vector<double> k1(s.size()), t0(s.size()), t1(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    const InvariantValues v = frenet_at(c, s[i], tol).invariants;
    k1[i] = v.kappa1;
    t0[i] = v.tau0;
    t1[i] = v.tau1;
  }
  r.kappa1 = detail::summarize(s, k1, [&](double x) { return frenet_at(c, x, tol).invariants.kappa1; });
  r.tau0 = detail::summarize(s, t0, [&](double x) { return frenet_at(c, x, tol).invariants.tau0; });
  r.tau1 = detail::summarize(s, t1, [&](double x) { return frenet_at(c, x, tol).invariants.tau1; });

  r.locus = singular_locus(c, spec.samples, tol);
  for (auto& p : r.locus.points) {
    p.s += 0.0;  // -0.0 -> 0.0 in the report
    p.t += 0.0;
  }
  r.developable = r.locus.singular_curve;
  const StrictionCurve sc(c);
  auto classify = [&](double s0) {
    PointReport p;
    const InvariantJet j = invariant_jet(c, s0, r.order, tol);
    p.report = r.developable ? classify_developable(j, tol) : classify_ruled(j, tol);
    p.report.s0 = s0 + 0.0;
    p.report.t0 = sc.offset(s0) + 0.0;
    for (auto& cond : p.report.conditions) cond.value += 0.0;
    if (r.developable) {
      try {
        p.curve_type = topological_type(j, tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OrderUndetectable) throw;
      }
    }
    return p;
  };
  if (r.developable) {
    // Generic points of the edge are cuspidal edges; report the origin and every zero of tau0, tau1.
    std::vector<double> at{c.domain().origin()};
    at.insert(at.end(), r.tau0.zeros.begin(), r.tau0.zeros.end());
    at.insert(at.end(), r.tau1.zeros.begin(), r.tau1.zeros.end());
    std::sort(at.begin(), at.end());
    at.erase(std::unique(at.begin(), at.end(), [](double a, double b) { return std::fabs(a - b) < 1e-12; }), at.end());
    for (double x : at) r.points.push_back(classify(x));
  } else {
    for (const auto& p : r.locus.points) r.points.push_back(classify(p.s));
  }
  return r;
}

// ---- JSON ----

using Json = nlohmann::ordered_json;

inline Json to_json(const InvariantSummary& s) { return {{"min", s.min}, {"max", s.max}, {"zeros", s.zeros}}; }

inline InvariantSummary invariant_summary_from_json(const Json& j) {
  return {j.at("min").get<double>(), j.at("max").get<double>(), j.at("zeros").get<std::vector<double>>()};
}

inline Json to_json(const PointReport& p) {
  Json conds = Json::array();
  for (const auto& c : p.report.conditions)
    conds.push_back({{"predicate", c.predicate}, {"value", c.value}, {"threshold", c.threshold}, {"holds", c.holds}});
  Json j = {{"label", std::string(to_string(p.report.label))},
            {"codimension", p.report.codimension},
            {"s0", p.report.s0},
            {"t0", p.report.t0},
            {"note", p.report.note},
            {"conditions", conds}};
  if (p.curve_type)
    j["curve_type"] = {{"m", p.curve_type->m},
                       {"l", p.curve_type->l},
                       {"r", p.curve_type->r},
                       {"determinativity", std::string(to_string(p.curve_type->determinativity))}};
  else
    j["curve_type"] = nullptr;
  return j;
}

inline PointReport point_report_from_json(const Json& j) {
  PointReport p;
  const auto label = parse_label(j.at("label").get<std::string>());
  if (!label) fail(ErrorCode::ParseError, "unknown label in report");
  p.report.label = *label;
  p.report.codimension = j.at("codimension").get<int>();
  p.report.s0 = j.at("s0").get<double>();
  p.report.t0 = j.at("t0").get<double>();
  p.report.note = j.at("note").get<std::string>();
  for (const auto& c : j.at("conditions"))
    p.report.conditions.push_back({c.at("predicate").get<std::string>(), c.at("value").get<double>(),
                                   c.at("threshold").get<double>(), c.at("holds").get<bool>()});
  if (!j.at("curve_type").is_null()) {
    const Json& ct = j.at("curve_type");
    CurveType t;
    t.m = ct.at("m").get<int>();
    t.l = ct.at("l").get<int>();
    t.r = ct.at("r").get<int>();
    const std::string d = ct.at("determinativity").get<std::string>();
    t.determinativity = d == "Smooth" ? Determinativity::Smooth
                        : d == "Topological" ? Determinativity::Topological
                                             : Determinativity::Neither;
    p.curve_type = t;
  }
  return p;
}

inline Json to_json(const AnalysisReport& r) {
  Json locus_points = Json::array();
  for (const auto& p : r.locus.points) locus_points.push_back({{"s", p.s}, {"t", p.t}, {"multiplicity", p.multiplicity}});
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(to_json(p));
  const Tolerances& t = r.tolerances;
  return {{"schema_version", r.schema_version},
          {"tool_version", r.tool_version},
          {"spec_hash", r.spec_hash},
          {"tolerances",
           {{"unit", t.unit}, {"geo", t.geo}, {"cylinder_floor", t.cylinder_floor}, {"jet", t.jet}, {"classify", t.classify}, {"ode", t.ode}}},
          {"domain", {r.domain.lo, r.domain.hi}},
          {"samples", r.samples},
          {"order", r.order},
          {"lambda", r.lambda},
          {"developable", r.developable},
          {"invariants", {{"kappa1", to_json(r.kappa1)}, {"tau0", to_json(r.tau0)}, {"tau1", to_json(r.tau1)}}},
          {"singular_locus", {{"singular_curve", r.locus.singular_curve}, {"points", locus_points}}},
          {"points", points}};
}

inline AnalysisReport report_from_json(const Json& j) {
  AnalysisReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) fail(ErrorCode::ParseError, "unsupported report schema version");
  r.tool_version = j.at("tool_version").get<std::string>();
  r.spec_hash = j.at("spec_hash").get<std::string>();
  const Json& t = j.at("tolerances");
  r.tolerances.unit = t.at("unit").get<double>();
  r.tolerances.geo = t.at("geo").get<double>();
  r.tolerances.cylinder_floor = t.at("cylinder_floor").get<double>();
  r.tolerances.jet = t.at("jet").get<double>();
  r.tolerances.classify = t.at("classify").get<double>();
  r.tolerances.ode = t.at("ode").get<double>();
  r.domain = {j.at("domain").at(0).get<double>(), j.at("domain").at(1).get<double>()};
  r.samples = j.at("samples").get<int>();
  r.order = j.at("order").get<int>();
  r.lambda = j.at("lambda").get<double>();
  r.developable = j.at("developable").get<bool>();
  const Json& inv = j.at("invariants");
  r.kappa1 = invariant_summary_from_json(inv.at("kappa1"));
  r.tau0 = invariant_summary_from_json(inv.at("tau0"));
  r.tau1 = invariant_summary_from_json(inv.at("tau1"));
  const Json& loc = j.at("singular_locus");
  r.locus.singular_curve = loc.at("singular_curve").get<bool>();
  for (const auto& p : loc.at("points"))
    r.locus.points.push_back({p.at("s").get<double>(), p.at("t").get<double>(), p.at("multiplicity").get<int>()});
  for (const auto& p : j.at("points")) r.points.push_back(point_report_from_json(p));
  return r;
}

/// Canonical serialization: two-space indentation, shortest round-trip decimal form for doubles.
inline std::string serialize(const AnalysisReport& r) { return to_json(r).dump(2) + "\n"; }

inline AnalysisReport parse_report(const std::string& text) {
  try {
    return report_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

}  // namespace ruledkit
