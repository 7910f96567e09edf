#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ruledkit/error.hpp"
#include "ruledkit/frenet.hpp"
#include "ruledkit/tolerances.hpp"

namespace ruledkit {

enum class Label {
  Immersion,
  S0,
  S1Plus,
  S1Minus,
  S2,
  B2Plus,
  B2Minus,
  H2,
  S3Plus,
  S3Minus,
  C3Plus,
  C3Minus,
  B3Candidate,
  H3Candidate,
  P3Candidate,
  S4,
  C4Plus,
  C4Minus,
  C5Plus,
  C5Minus,
  F4,
  CE,
  CS0,
  CS1Plus,
  CC3Plus,
  Sw,
  CA4,
  CA5,
  T1,
  T2,
  Unresolved,
};

inline constexpr Label kAllLabels[] = {
    Label::Immersion, Label::S0,     Label::S1Plus, Label::S1Minus, Label::S2,          Label::B2Plus,
    Label::B2Minus,   Label::H2,     Label::S3Plus, Label::S3Minus, Label::C3Plus,      Label::C3Minus,
    Label::B3Candidate, Label::H3Candidate, Label::P3Candidate, Label::S4, Label::C4Plus, Label::C4Minus,
    Label::C5Plus,    Label::C5Minus, Label::F4,    Label::CE,      Label::CS0,         Label::CS1Plus,
    Label::CC3Plus,   Label::Sw,     Label::CA4,    Label::CA5,     Label::T1,          Label::T2,
    Label::Unresolved};

constexpr std::string_view to_string(Label l) {
  switch (l) {
    case Label::Immersion: return "Immersion";
    case Label::S0: return "S0";
    case Label::S1Plus: return "S1+";
    case Label::S1Minus: return "S1-";
    case Label::S2: return "S2";
    case Label::B2Plus: return "B2+";
    case Label::B2Minus: return "B2-";
    case Label::H2: return "H2";
    case Label::S3Plus: return "S3+";
    case Label::S3Minus: return "S3-";
    case Label::C3Plus: return "C3+";
    case Label::C3Minus: return "C3-";
    case Label::B3Candidate: return "B3_candidate";
    case Label::H3Candidate: return "H3_candidate";
    case Label::P3Candidate: return "P3_candidate";
    case Label::S4: return "S4";
    case Label::C4Plus: return "C4+";
    case Label::C4Minus: return "C4-";
    case Label::C5Plus: return "C5+";
    case Label::C5Minus: return "C5-";
    case Label::F4: return "F4";
    case Label::CE: return "cE";
    case Label::CS0: return "cS0";
    case Label::CS1Plus: return "cS1+";
    case Label::CC3Plus: return "cC3+";
    case Label::Sw: return "Sw";
    case Label::CA4: return "cA4";
    case Label::CA5: return "cA5";
    case Label::T1: return "T1";
    case Label::T2: return "T2";
    case Label::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

inline std::optional<Label> parse_label(std::string_view name) {
  for (Label l : kAllLabels)
    if (to_string(l) == name) return l;
  return std::nullopt;
}

/// A-codimension; -1 for Unresolved.
constexpr int codimension(Label l) {
  switch (l) {
    case Label::Immersion: return 0;
    case Label::S0: return 2;
    case Label::S1Plus:
    case Label::S1Minus: return 3;
    case Label::S2:
    case Label::B2Plus:
    case Label::B2Minus:
    case Label::H2: return 4;
    case Label::S3Plus:
    case Label::S3Minus:
    case Label::C3Plus:
    case Label::C3Minus:
    case Label::B3Candidate:
    case Label::H3Candidate:
    case Label::P3Candidate: return 5;
    case Label::S4:
    case Label::C4Plus:
    case Label::C4Minus:
    case Label::F4: return 6;
    case Label::C5Plus:
    case Label::C5Minus: return 7;
    case Label::CE: return 1;
    case Label::CS0:
    case Label::Sw: return 2;
    case Label::CS1Plus:
    case Label::CA4:
    case Label::T1: return 3;
    case Label::CC3Plus:
    case Label::CA5:
    case Label::T2: return 4;
    case Label::Unresolved: return -1;
  }
  return -1;
}

constexpr bool is_developable_label(Label l) {
  switch (l) {
    case Label::CE:
    case Label::CS0:
    case Label::CS1Plus:
    case Label::CC3Plus:
    case Label::Sw:
    case Label::CA4:
    case Label::CA5:
    case Label::T1:
    case Label::T2: return true;
    default: return false;
  }
}

struct Condition {
  std::string predicate;
  double value = 0.0;
  double threshold = 0.0;
  bool holds = false;

  bool operator==(const Condition&) const = default;
};

struct SingularityReport {
  Label label = Label::Unresolved;
  int codimension = -1;
  std::vector<Condition> conditions;
  double s0 = 0.0;
  double t0 = 0.0;
  std::string note;

  bool operator==(const SingularityReport&) const = default;
};

/// Smallest k with |jet[k]| > tol * max(1, max |jet|); nullopt when none within the available order.
inline std::optional<int> vanishing_order(std::span<const double> jet, double tol) {
  if (jet.empty()) fail(ErrorCode::InvalidArgument, "vanishing_order needs at least one coefficient");
  double scale = 1.0;
  for (double v : jet) scale = std::fmax(scale, std::fabs(v));
  for (size_t k = 0; k < jet.size(); ++k)
    if (std::fabs(jet[k]) > tol * scale) return static_cast<int>(k);
  return std::nullopt;
}

struct ModuliCoefficients {
  double b2 = 0.0;
  double h2 = 0.0;
  double b2_magnitude = 0.0;  // sum of |monomials|, the natural scale of b2
  double h2_magnitude = 0.0;
};

namespace detail {

inline double at(const std::vector<double>& v, int k, const char* name) {
  if (k >= static_cast<int>(v.size()))
    fail(ErrorCode::InsufficientJetOrder, std::string(name) + " derivative of order " + std::to_string(k) + " unavailable");
  return v[static_cast<size_t>(k)];
}

struct Terms {
  double sum = 0.0;
  double magnitude = 0.0;
  void add(double t) {
    sum += t;
    magnitude += std::fabs(t);
  }
};

}  // namespace detail

inline ModuliCoefficients moduli_coefficients(const InvariantJet& j) {
  using detail::at;
  const double t0 = at(j.tau0, 0, "tau0"), t0p = at(j.tau0, 1, "tau0"), t0pp = at(j.tau0, 2, "tau0");
  const double t1 = at(j.tau1, 0, "tau1"), t1p = at(j.tau1, 1, "tau1"), t1pp = at(j.tau1, 2, "tau1"),
               t1ppp = at(j.tau1, 3, "tau1");
  const double k2 = at(j.kappa1, 2, "kappa1"), k3 = at(j.kappa1, 3, "kappa1"), k4 = at(j.kappa1, 4, "kappa1");
  detail::Terms b;
  b.add(48 * t0 * t0 * t1 * t1 * t0 * t0);
  b.add(-96 * t0 * t0 * t1 * t1);
  b.add(-20 * t0 * t0 * t1p * t1p);
  b.add(-20 * t1 * t1 * t0p * t0p);
  b.add(-56 * t0 * t1 * t0p * t1p);
  b.add(-24 * t0 * t1 * t0 * t1pp);
  b.add(-24 * t0 * t1 * t1 * t0pp);
  b.add(20 * k3 * t0 * t1p);
  b.add(20 * k3 * t1 * t0p);
  b.add(-5 * k3 * k3);
  b.add(6 * k4 * t0 * t1);
  detail::Terms h;
  h.add(-15 * t0 * t0 * t1p * t1p * t1p);
  h.add(-24 * t0p * t1p * t1p * k2);
  h.add(-36 * t1p * k2 * k2);
  h.add(-15 * t0 * t0 * t1p * k2 * k2);
  h.add(-24 * t0p * k2 * k2 * k2);
  h.add(-21 * t0 * t1p * k2 * t1pp);
  h.add(20 * t0 * t1p * t1p * k3);
  h.add(-t0 * k2 * k2 * k3);
  h.add(5 * k2 * t1pp * k3);
  h.add(-5 * t1p * k3 * k3);
  h.add(-4 * k2 * k2 * t1ppp);
  h.add(4 * t1p * k2 * k4);
  return {b.sum, h.sum, b.magnitude, h.magnitude};
}

namespace detail {

/// Bookkeeping for one walk down the decision tree.
class Walk {
 public:
  Walk(const InvariantJet& j, double tol) : j_(j), tol_(tol) {
    scale_ = 1.0;
    for (const auto* v : {&j.kappa1, &j.tau0, &j.tau1})
      for (double x : *v) scale_ = std::fmax(scale_, std::fabs(x));
  }

  double k1(int n) const { return at(j_.kappa1, n, "kappa1"); }
  double t0(int n) const { return at(j_.tau0, n, "tau0"); }
  double t1(int n) const { return at(j_.tau1, n, "tau1"); }

  /// Records "value != 0" and returns whether it holds; `magnitude` is the size of the terms forming value.
  bool nonzero(const std::string& what, double value, double magnitude = 0.0) {
    const double thr = tol_ * std::fmax(scale_, magnitude);
    const bool h = std::fabs(value) > thr;
    report_.conditions.push_back({what + " != 0", value, thr, h});
    return h;
  }

  /// Records the sign of a value already known to be nonzero.
  bool positive(const std::string& what, double value) {
    report_.conditions.push_back({what + " > 0", value, 0.0, value > 0.0});
    return value > 0.0;
  }

  SingularityReport finish(Label l, std::string note = {}) {
    report_.label = l;
    report_.codimension = codimension(l);
    report_.s0 = j_.s0;
    report_.note = std::move(note);
    return report_;
  }

  SingularityReport& report() { return report_; }

 private:
  const InvariantJet& j_;
  double tol_;
  double scale_ = 1.0;
  SingularityReport report_;
};

}  // namespace detail

inline SingularityReport classify_developable(const InvariantJet& j, const Tolerances& tol = kDefaultTolerances) {
  detail::Walk w(j, tol.classify);
  if (w.nonzero("tau1", w.t1(0))) {
    if (w.nonzero("tau0", w.t0(0))) return w.finish(Label::CE);
    if (w.nonzero("tau0'", w.t0(1))) return w.finish(Label::CS0);
    if (w.nonzero("tau0''", w.t0(2))) return w.finish(Label::CS1Plus);
    if (w.nonzero("tau0'''", w.t0(3))) return w.finish(Label::CC3Plus);
    return w.finish(Label::Unresolved, "tau0 vanishes to order 3 with tau1 != 0");
  }
  if (w.nonzero("tau0", w.t0(0))) {
    if (w.nonzero("tau1'", w.t1(1))) return w.finish(Label::Sw);
    if (w.nonzero("tau1''", w.t1(2))) return w.finish(Label::CA4);
    if (w.nonzero("tau1'''", w.t1(3)))
      return w.finish(Label::CA5, "topological verdict: topologically A-equivalent to (x, xy + 3y^5, xy^2 + 5y^6)");
    return w.finish(Label::Unresolved, "tau1 vanishes to order 3 with tau0 != 0");
  }
  if (w.nonzero("tau1'", w.t1(1))) return w.finish(Label::T1);
  return w.finish(Label::T2);
}

/// Decision tree over the jets of kappa1, tau0, tau1 at a singular point (kappa1(s0) = 0).
inline SingularityReport classify_ruled(const InvariantJet& j, const Tolerances& tol = kDefaultTolerances) {
  if (!vanishing_order(j.kappa1, tol.classify).has_value()) {
    SingularityReport r = classify_developable(j, tol);
    r.note = r.note.empty() ? "kappa1 vanishes identically: developable" : "kappa1 vanishes identically: developable; " + r.note;
    return r;
  }
  detail::Walk w(j, tol.classify);
  if (w.nonzero("kappa1", w.k1(0))) return w.finish(Label::Immersion);
  if (w.nonzero("kappa1'", w.k1(1))) return w.finish(Label::S0);

  const double k2 = w.k1(2);
  const double tau0 = w.t0(0), tau1 = w.t1(0);
  if (w.nonzero("tau1", tau1)) {
    if (w.nonzero("kappa1''", k2)) {
      const double d = k2 - 2 * tau0 * tau1;
      if (w.nonzero("kappa1'' - 2 tau0 tau1", d, std::fabs(k2) + 2 * std::fabs(tau0 * tau1)))
        return w.finish(w.positive("kappa1''(kappa1'' - 2 tau0 tau1)", k2 * d) ? Label::S1Plus : Label::S1Minus);
      const ModuliCoefficients m = moduli_coefficients(j);
      if (w.nonzero("b2", m.b2, m.b2_magnitude))
        return w.finish(w.positive("b2", m.b2) ? Label::B2Plus : Label::B2Minus);
      return w.finish(Label::B3Candidate, "b2 = 0; deciding B3 needs the modulus b3, which is not evaluated");
    }
    if (w.nonzero("tau0", tau0)) {
      // S_k: kappa1 = ... = kappa1^(k) = 0, sign of kappa1^(k+1) tau0 tau1.
      if (w.nonzero("kappa1'''", w.k1(3))) return w.finish(Label::S2);
      if (w.nonzero("kappa1''''", w.k1(4)))
        return w.finish(w.positive("-kappa1'''' tau0 tau1", -w.k1(4) * tau0 * tau1) ? Label::S3Plus : Label::S3Minus);
      if (w.nonzero("kappa1^(5)", w.k1(5))) return w.finish(Label::S4);
      return w.finish(Label::Unresolved, "kappa1 vanishes to order 5 on the S branch");
    }
    // C-type: kappa1'' = tau0 = 0.
    const double k3 = w.k1(3);
    const double t0p = w.t0(1);
    const double c = k3 - 2 * tau1 * t0p;
    const bool k3nz = w.nonzero("kappa1'''", k3);
    const bool cnz = w.nonzero("kappa1''' - 2 tau1 tau0'", c, std::fabs(k3) + 2 * std::fabs(tau1 * t0p));
    if (k3nz && cnz) return w.finish(w.positive("kappa1'''(kappa1''' - 2 tau1 tau0')", k3 * c) ? Label::C3Plus : Label::C3Minus);
    if (!k3nz) {
      if (!w.nonzero("tau1 tau0'", tau1 * t0p)) return w.finish(Label::Unresolved, "kappa1''' = tau0' = 0: codimension >= 7");
      if (w.nonzero("kappa1''''", w.k1(4)))
        return w.finish(w.positive("-kappa1'''' tau0' tau1", -w.k1(4) * t0p * tau1) ? Label::C4Plus : Label::C4Minus);
      if (w.nonzero("kappa1^(5)", w.k1(5)))
        return w.finish(w.positive("-kappa1^(5) tau0' tau1", -w.k1(5) * t0p * tau1) ? Label::C5Plus : Label::C5Minus);
      return w.finish(Label::Unresolved, "kappa1 vanishes to order 5 on the C branch");
    }
    // kappa1''' = 2 tau1 tau0' != 0
    const double f4 = 3 * w.k1(4) - 8 * t0p * w.t1(1) - 12 * tau1 * w.t0(2);
    if (w.nonzero("3 kappa1'''' - 8 tau0' tau1' - 12 tau1 tau0''", f4,
                  3 * std::fabs(w.k1(4)) + 8 * std::fabs(t0p * w.t1(1)) + 12 * std::fabs(tau1 * w.t0(2))))
      return w.finish(Label::F4);
    return w.finish(Label::Unresolved, "F4 condition fails: codimension >= 7");
  }
  // tau1 = 0
  if (w.nonzero("kappa1''", k2)) {
    const ModuliCoefficients m = moduli_coefficients(j);
    if (w.nonzero("h2", m.h2, m.h2_magnitude)) return w.finish(Label::H2);
    return w.finish(Label::H3Candidate, "h2 = 0; deciding H3 needs the modulus h3, which is not evaluated");
  }
  if (w.nonzero("tau0 tau1'", tau0 * w.t1(1)))
    return w.finish(Label::P3Candidate,
                    "P3 needs p4 not in {0, 1/2, 1, 3/2}; p4 is not evaluated");
  return w.finish(Label::Unresolved, "kappa1'' = tau1 = tau0 tau1' = 0: codimension >= 6");
}

enum class Determinativity { Smooth, Topological, Neither };

constexpr std::string_view to_string(Determinativity d) {
  switch (d) {
    case Determinativity::Smooth: return "Smooth";
    case Determinativity::Topological: return "Topological";
    case Determinativity::Neither: return "Neither";
  }
  return "Neither";
}

/// Ishikawa's characterization for a curve type (m, m+l, m+l+r).
constexpr Determinativity determinativity(int m, int l, int r) {
  const int n1 = m + l, n2 = m + l + r;
  if ((m == 1 && n1 == 2) || (m == 2 && n1 == 3 && n2 == 4) || (m == 1 && n1 == 3 && n2 == 4) ||
      (m == 3 && n1 == 4 && n2 == 5) || (m == 1 && n1 == 3 && n2 == 5))
    return Determinativity::Smooth;
  const bool both_even = l % 2 == 0 && r % 2 == 0;
  if (!both_even || m == 1) return Determinativity::Topological;
  return Determinativity::Neither;
}

struct CurveType {
  int m = 1;
  int l = 1;
  int r = 1;
  Determinativity determinativity = Determinativity::Smooth;

  bool operator==(const CurveType&) const = default;
};

/// Type (m, m+1, m+1+r) of the striction curve: m - 1 = ord tau1, r - 1 = ord tau0.
inline CurveType topological_type(const InvariantJet& j, const Tolerances& tol = kDefaultTolerances) {
  double scale = 1.0;
  for (const auto* v : {&j.tau0, &j.tau1})
    for (double x : *v) scale = std::fmax(scale, std::fabs(x));
  auto order = [&](const std::vector<double>& v) -> std::optional<int> {
    for (size_t k = 0; k < v.size(); ++k)
      if (std::fabs(v[k]) > tol.classify * scale) return static_cast<int>(k);
    return std::nullopt;
  };
  const auto o1 = order(j.tau1);
  const auto o0 = order(j.tau0);
  if (!o1 || !o0) fail(ErrorCode::OrderUndetectable, "tau0 or tau1 vanishes to the available jet order");
  CurveType c;
  c.m = *o1 + 1;
  c.l = 1;
  c.r = *o0 + 1;
  c.determinativity = determinativity(c.m, c.l, c.r);
  return c;
}

}  // namespace ruledkit
