#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ruledkit/arclength.hpp"
#include "ruledkit/classification.hpp"
#include "ruledkit/error.hpp"
#include "ruledkit/reconstruction.hpp"
#include "ruledkit/ruled_curve.hpp"

namespace ruledkit {

// Surface spec files:
//
//   # comment
//   [builtin]            name = helicoid | helix-tangent-developable | cone | gallery:<label>
//   [polynomial]         r_x = [..], r_y, r_z, e_x, e_y, e_z (power-basis coefficients)
//   [prescription]       kappa0 = [1], kappa1, tau0, tau1 (power-basis coefficients), step = 1e-3
//   [surface]            samples = 1001, order = 6
//
// Exactly one of builtin / polynomial / prescription; `domain = [lo, hi]` may appear in any section.

enum class SourceKind { Builtin, Polynomial, Prescription };

struct SpecValue {
  std::vector<double> numbers;
  std::string text;  // non-numeric scalar
  bool is_list = false;
  int line = 0;
  int column = 0;
};

struct SurfaceSpec {
  SourceKind kind = SourceKind::Builtin;
  std::string builtin;
  std::map<std::string, SpecValue> params;  // keys of the source section
  std::optional<Interval> domain;
  int samples = 1001;
  int order = 6;
  double step = 1e-3;
  std::string source_text;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

inline std::string trim(const std::string& s, size_t* lead = nullptr) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

inline std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
  return v;
}

inline SpecValue parse_value(const std::string& raw, int line, int column) {
  SpecValue v;
  v.line = line;
  v.column = column;
  if (raw.empty()) throw ParseError(line, column, "missing value");
  if (raw.front() == '[') {
    if (raw.back() != ']') throw ParseError(line, column + static_cast<int>(raw.size()) - 1, "expected ']'");
    v.is_list = true;
    const std::string body = raw.substr(1, raw.size() - 2);
    if (trim(body).empty()) return v;
    size_t pos = 0;
    while (pos <= body.size()) {
      size_t comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      size_t lead = 0;
      const std::string item = trim(body.substr(pos, comma - pos), &lead);
      const int col = column + 1 + static_cast<int>(pos + lead);
      const auto num = parse_number(item);
      if (!num) throw ParseError(line, col, "expected a number, found '" + item + "'");
      v.numbers.push_back(*num);
      pos = comma + 1;
    }
    return v;
  }
  if (const auto num = parse_number(raw)) {
    v.numbers.push_back(*num);
    return v;
  }
  v.text = raw;
  return v;
}

}  // namespace detail

inline SurfaceSpec parse_spec(const std::string& text) {
  SurfaceSpec spec;
  spec.source_text = text;
  std::map<std::string, std::map<std::string, SpecValue>> sections;
  std::map<std::string, int> section_line;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    size_t lead = 0;
    const std::string s = detail::trim(raw, &lead);
    if (s.empty()) continue;
    const int col = static_cast<int>(lead) + 1;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, col + static_cast<int>(s.size()) - 1, "expected ']' closing the section name");
      current = detail::trim(s.substr(1, s.size() - 2));
      if (current != "builtin" && current != "polynomial" && current != "prescription" && current != "surface")
        throw ParseError(line, col + 1, "unknown section '" + current + "'");
      if (sections.count(current)) throw ParseError(line, col, "duplicate section '" + current + "'");
      sections[current];
      section_line[current] = line;
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, col, "expected 'key = value'");
    if (current.empty()) throw ParseError(line, col, "key outside of any section");
    const std::string key = detail::trim(s.substr(0, eq));
    if (key.empty()) throw ParseError(line, col, "empty key");
    size_t vlead = 0;
    const std::string value = detail::trim(s.substr(eq + 1), &vlead);
    const int vcol = col + static_cast<int>(eq + 1 + vlead);
    if (sections[current].count(key)) throw ParseError(line, col, "duplicate key '" + key + "'");
    sections[current][key] = detail::parse_value(value, line, vcol);
  }

  int sources = 0;
  for (const char* name : {"builtin", "polynomial", "prescription"}) sources += static_cast<int>(sections.count(name));
  if (sources != 1) throw ParseError(std::max(line, 1), 1, "exactly one of [builtin], [polynomial], [prescription] is required");

  auto take_domain = [&](std::map<std::string, SpecValue>& kv) {
    auto it = kv.find("domain");
    if (it == kv.end()) return;
    const SpecValue& v = it->second;
    if (!v.is_list || v.numbers.size() != 2 || !(v.numbers[0] < v.numbers[1]))
      throw ParseError(v.line, v.column, "domain must be [lo, hi] with lo < hi");
    spec.domain = Interval{v.numbers[0], v.numbers[1]};
    kv.erase(it);
  };

  if (sections.count("surface")) {
    auto& kv = sections["surface"];
    take_domain(kv);
    for (const auto& [key, v] : kv) {
      if (v.is_list || v.numbers.size() != 1) throw ParseError(v.line, v.column, key + " must be a number");
      if (key == "samples") {
        if (v.numbers[0] < 3) throw ParseError(v.line, v.column, "samples must be at least 3");
        spec.samples = static_cast<int>(v.numbers[0]);
      } else if (key == "order") {
        if (v.numbers[0] < 1) throw ParseError(v.line, v.column, "order must be positive");
        spec.order = static_cast<int>(v.numbers[0]);
      } else {
        throw ParseError(v.line, v.column, "unknown key '" + key + "' in [surface]");
      }
    }
  }

  if (sections.count("builtin")) {
    spec.kind = SourceKind::Builtin;
    auto& kv = sections["builtin"];
    take_domain(kv);
    auto it = kv.find("name");
    if (it == kv.end() || it->second.text.empty())
      throw ParseError(section_line["builtin"], 1, "[builtin] needs name = <builtin>");
    spec.builtin = it->second.text;
    const SpecValue nameval = it->second;
    kv.erase(it);
    static const std::map<std::string, std::vector<std::string>> allowed = {
        {"helicoid", {"p"}}, {"helix-tangent-developable", {"a", "h"}}, {"cone", {"apex", "alpha"}}};
    const bool gallery_name = spec.builtin.rfind("gallery:", 0) == 0;
    if (gallery_name) {
      if (!parse_label(spec.builtin.substr(8))) throw ParseError(nameval.line, nameval.column, "unknown label in '" + spec.builtin + "'");
    } else if (!allowed.count(spec.builtin)) {
      throw ParseError(nameval.line, nameval.column, "unknown builtin '" + spec.builtin + "'");
    }
    for (const auto& [key, v] : kv) {
      const auto& ok = gallery_name ? std::vector<std::string>{} : allowed.at(spec.builtin);
      if (std::find(ok.begin(), ok.end(), key) == ok.end())
        throw ParseError(v.line, v.column, "unknown parameter '" + key + "' for " + spec.builtin);
    }
    spec.params = kv;
  } else if (sections.count("polynomial")) {
    spec.kind = SourceKind::Polynomial;
    auto& kv = sections["polynomial"];
    take_domain(kv);
    for (const char* key : {"r_x", "r_y", "r_z", "e_x", "e_y", "e_z"})
      if (!kv.count(key)) throw ParseError(section_line["polynomial"], 1, std::string("[polynomial] needs ") + key);
    for (const auto& [key, v] : kv) {
      static const std::vector<std::string> ok = {"r_x", "r_y", "r_z", "e_x", "e_y", "e_z"};
      if (std::find(ok.begin(), ok.end(), key) == ok.end()) throw ParseError(v.line, v.column, "unknown key '" + key + "'");
      if (!v.is_list || v.numbers.empty()) throw ParseError(v.line, v.column, key + " must be a nonempty list");
    }
    spec.params = kv;
  } else {
    spec.kind = SourceKind::Prescription;
    auto& kv = sections["prescription"];
    take_domain(kv);
    if (auto it = kv.find("step"); it != kv.end()) {
      if (it->second.is_list || it->second.numbers.size() != 1 || !(it->second.numbers[0] > 0.0))
        throw ParseError(it->second.line, it->second.column, "step must be a positive number");
      spec.step = it->second.numbers[0];
      kv.erase(it);
    }
    for (const auto& [key, v] : kv) {
      static const std::vector<std::string> ok = {"kappa0", "kappa1", "tau0", "tau1"};
      if (std::find(ok.begin(), ok.end(), key) == ok.end()) throw ParseError(v.line, v.column, "unknown key '" + key + "'");
      if (!v.is_list || v.numbers.empty()) throw ParseError(v.line, v.column, key + " must be a nonempty list");
    }
    spec.params = kv;
  }
  return spec;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline SurfaceSpec load_spec(const std::string& path) { return parse_spec(read_text_file(path)); }

/// 64-bit FNV-1a of the input text, as 16 hex digits.
inline std::string spec_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline double scalar_param(const SurfaceSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) return fallback;
  if (it->second.is_list || it->second.numbers.size() != 1)
    throw ParseError(it->second.line, it->second.column, key + " must be a number");
  return it->second.numbers[0];
}

inline InvariantPrescription prescription_of(const SurfaceSpec& spec) {
  if (spec.kind != SourceKind::Prescription) fail(ErrorCode::InvalidArgument, "spec is not a prescription");
  auto poly = [&](const char* key, Poly fallback) {
    auto it = spec.params.find(key);
    return ScalarFunction::polynomial(it == spec.params.end() ? std::move(fallback) : it->second.numbers);
  };
  InvariantPrescription p;
  p.kappa0 = poly("kappa0", {1.0});
  p.kappa1 = poly("kappa1", {0.0});
  p.tau0 = poly("tau0", {0.0});
  p.tau1 = poly("tau1", {0.0});
  p.domain = spec.domain.value_or(Interval{-0.5, 0.5});
  return p;
}

/// Checks kappa0 > 0 on a fine grid of the domain.
inline void check_positive_kappa0(const InvariantPrescription& p, int samples = 1001) {
  for (int i = 0; i < samples; ++i) {
    const double u = p.domain.lo + p.domain.length() * i / (samples - 1);
    if (!(p.kappa0(u) > 0.0)) fail(ErrorCode::NonPositiveKappa0, "kappa0(" + std::to_string(u) + ") <= 0");
  }
}

/// The surface described by a spec, parameterized by arclength. `lambda` shifts kappa1 of
/// prescription-based sources (versal deformation parameter).
inline RuledCurve build_surface(const SurfaceSpec& spec, double lambda = 0.0) {
  if (spec.kind == SourceKind::Builtin) {
    const Interval dom = spec.domain.value_or(Interval{-3.0, 3.0});
    if (spec.builtin.rfind("gallery:", 0) == 0) {
      const GalleryEntry g = gallery(*parse_label(spec.builtin.substr(8)));
      if (lambda == 0.0) return g.surface;
      InvariantPrescription p = InvariantPrescription::from_jets(g.kappa1, g.tau0, g.tau1);
      p.kappa1 = p.kappa1.plus(lambda);
      return truncated_polynomial_surface(p);
    }
    if (lambda != 0.0) fail(ErrorCode::InvalidArgument, "lambda applies to gallery and prescription sources only");
    if (spec.builtin == "helicoid") return helicoid(scalar_param(spec, "p", 1.0), dom);
    if (spec.builtin == "helix-tangent-developable")
      return arclength_reparam(helix_tangent_developable(scalar_param(spec, "a", 1.0), scalar_param(spec, "h", 1.0), dom));
    Vec3d apex{0, 0, 0};
    if (auto it = spec.params.find("apex"); it != spec.params.end()) {
      if (it->second.numbers.size() != 3) throw ParseError(it->second.line, it->second.column, "apex must be [x, y, z]");
      apex = {it->second.numbers[0], it->second.numbers[1], it->second.numbers[2]};
    }
    return arclength_reparam(cone(apex, scalar_param(spec, "alpha", 0.5), dom));
  }
  if (spec.kind == SourceKind::Polynomial) {
    if (lambda != 0.0) fail(ErrorCode::InvalidArgument, "lambda applies to gallery and prescription sources only");
    auto get = [&](const char* k) { return spec.params.at(k).numbers; };
    const Poly3 r{get("r_x"), get("r_y"), get("r_z")};
    const Poly3 e{get("e_x"), get("e_y"), get("e_z")};
    return arclength_reparam(from_polynomials(r, e, spec.domain.value_or(Interval{-1.0, 1.0})));
  }
  InvariantPrescription p = prescription_of(spec);
  check_positive_kappa0(p);
  p.kappa1 = p.kappa1.plus(lambda);
  const ReconstructedCurve rc = integrate_frenet(p, identity_frame(), spec.step);
  return p.unit_speed() ? rc.curve : arclength_reparam(rc.curve);
}

/// Spec text for a gallery prescription (power-basis coefficients).
inline std::string gallery_spec_text(const GalleryEntry& g) {
  auto list = [](const std::vector<double>& d) {
    std::string s = "[";
    for (size_t k = 0; k < d.size(); ++k) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d[k] / Taylor::factorial(static_cast<int>(k)));
      s += (k ? ", " : "") + std::string(buf);
    }
    return s + "]";
  };
  std::string out = "# " + std::string(to_string(g.label)) + " at s = 0\n[prescription]\n";
  out += "kappa0 = [1]\n";
  out += "kappa1 = " + list(g.kappa1) + "\n";
  out += "tau0 = " + list(g.tau0) + "\n";
  out += "tau1 = " + list(g.tau1) + "\n";
  out += "domain = [-0.5, 0.5]\nstep = 0.001\n";
  return out;
}

}  // namespace ruledkit
