#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ruledkit/error.hpp"

namespace ruledkit {

/// Truncated power series  c0 + c1 d + ... + cn d^n  in a local offset d.
///
/// Arithmetic follows the usual truncation rule: the result of a binary
/// operation keeps the smaller of the two orders. A series built from a plain
/// scalar is an exact constant and never truncates its partner, which lets
/// generic code written for `double` run unchanged on series and produce
/// derivative jets (forward-mode Taylor arithmetic).
class Taylor {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  Taylor() : Taylor(0.0) {}
  Taylor(double constant) : order_(kExact), c_{constant} {}  // NOLINT: implicit by intent

  explicit Taylor(std::vector<double> coefficients) : order_(static_cast<int>(coefficients.size()) - 1), c_(std::move(coefficients)) {
    if (c_.empty()) fail(ErrorCode::InvalidArgument, "series needs at least one coefficient");
  }

  static Taylor zero(int order) { return Taylor(std::vector<double>(static_cast<size_t>(order) + 1, 0.0)); }

  /// The independent variable `at + d`, truncated at `order`.
  static Taylor variable(double at, int order) {
    Taylor t = zero(order);
    t.c_[0] = at;
    if (order >= 1) t.c_[1] = 1.0;
    return t;
  }

  int order() const { return order_; }
  bool is_exact() const { return order_ == kExact; }
  int stored() const { return static_cast<int>(c_.size()); }

  double operator[](int k) const { return k < stored() ? c_[static_cast<size_t>(k)] : 0.0; }
  double& coef(int k) { return c_.at(static_cast<size_t>(k)); }
  std::span<const double> coefficients() const { return c_; }

  double value() const { return c_[0]; }

  /// k-th derivative with respect to the offset, at d = 0.
  double derivative_value(int k) const { return (*this)[k] * factorial(k); }

  std::vector<double> derivative_values(int max_k) const {
    std::vector<double> out(static_cast<size_t>(max_k) + 1);
    for (int k = 0; k <= max_k; ++k) out[static_cast<size_t>(k)] = derivative_value(k);
    return out;
  }

  /// Series of the derivative; loses one order.
  Taylor derivative() const {
    if (is_exact()) return Taylor(0.0);
    if (order_ == 0) fail(ErrorCode::OrderUnavailable, "cannot differentiate an order-0 series");
    std::vector<double> d(static_cast<size_t>(order_));
    for (int k = 0; k < order_; ++k) d[static_cast<size_t>(k)] = (k + 1) * c_[static_cast<size_t>(k) + 1];
    return Taylor(std::move(d));
  }

  /// Antiderivative with constant term `c0`; gains one order.
  Taylor integral(double c0 = 0.0) const {
    if (is_exact()) {
      if (c_[0] != 0.0) fail(ErrorCode::InvalidArgument, "integral of an exact constant needs an order");
      return Taylor(c0);
    }
    std::vector<double> d(static_cast<size_t>(order_) + 2);
    d[0] = c0;
    for (int k = 0; k <= order_; ++k) d[static_cast<size_t>(k) + 1] = c_[static_cast<size_t>(k)] / (k + 1);
    return Taylor(std::move(d));
  }

  Taylor truncated(int order) const {
    if (order >= order_) return *this;
    std::vector<double> d(static_cast<size_t>(order) + 1, 0.0);
    for (int k = 0; k <= order && k < stored(); ++k) d[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return Taylor(std::move(d));
  }

  /// Promote an exact constant to an explicit order (no-op otherwise).
  Taylor with_order(int order) const {
    if (!is_exact()) return truncated(order);
    Taylor t = zero(order);
    t.c_[0] = c_[0];
    return t;
  }

  double evaluate(double d) const {
    double acc = 0.0;
    for (int k = stored() - 1; k >= 0; --k) acc = acc * d + c_[static_cast<size_t>(k)];
    return acc;
  }

  Taylor& operator+=(const Taylor& o) { return *this = *this + o; }
  Taylor& operator-=(const Taylor& o) { return *this = *this - o; }
  Taylor& operator*=(const Taylor& o) { return *this = *this * o; }
  Taylor& operator/=(const Taylor& o) { return *this = *this / o; }

  friend Taylor operator-(const Taylor& a) {
    Taylor r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Taylor operator+(const Taylor& a, const Taylor& b) {
    Taylor r = blank(a, b);
    for (int k = 0; k < r.stored(); ++k) r.c_[static_cast<size_t>(k)] = a[k] + b[k];
    return r;
  }

  friend Taylor operator-(const Taylor& a, const Taylor& b) {
    Taylor r = blank(a, b);
    for (int k = 0; k < r.stored(); ++k) r.c_[static_cast<size_t>(k)] = a[k] - b[k];
    return r;
  }

  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    if (b.is_exact()) return scaled(a, b.c_[0]);
    if (a.is_exact()) return scaled(b, a.c_[0]);
    Taylor r = blank(a, b);
    const int n = r.stored();
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= k; ++j) acc += a.c_[static_cast<size_t>(j)] * b.c_[static_cast<size_t>(k - j)];
      r.c_[static_cast<size_t>(k)] = acc;
    }
    return r;
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    if (b.c_[0] == 0.0) fail(ErrorCode::InvalidArgument, "series division by a series with zero constant term");
    if (b.is_exact()) return scaled(a, 1.0 / b.c_[0]);
    Taylor q = blank(a, b);
    const int n = q.stored();
    for (int k = 0; k < n; ++k) {
      double acc = a[k];
      for (int j = 1; j <= k; ++j) acc -= b.c_[static_cast<size_t>(j)] * q.c_[static_cast<size_t>(k - j)];
      q.c_[static_cast<size_t>(k)] = acc / b.c_[0];
    }
    return q;
  }

  friend Taylor sqrt(const Taylor& a) {
    if (!(a.c_[0] > 0.0)) fail(ErrorCode::NonPositiveReal, "series square root needs a positive constant term");
    Taylor r = a;
    r.c_[0] = std::sqrt(a.c_[0]);
    for (int k = 1; k < r.stored(); ++k) {
      double acc = a.c_[static_cast<size_t>(k)];
      for (int j = 1; j < k; ++j) acc -= r.c_[static_cast<size_t>(j)] * r.c_[static_cast<size_t>(k - j)];
      r.c_[static_cast<size_t>(k)] = acc / (2.0 * r.c_[0]);
    }
    return r;
  }

  friend Taylor exp(const Taylor& a) {
    Taylor r = a;
    r.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k < r.stored(); ++k) {
      double acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += j * a.c_[static_cast<size_t>(j)] * r.c_[static_cast<size_t>(k - j)];
      r.c_[static_cast<size_t>(k)] = acc / k;
    }
    return r;
  }

  friend Taylor log(const Taylor& a) {
    if (!(a.c_[0] > 0.0)) fail(ErrorCode::NonPositiveReal, "series logarithm needs a positive constant term");
    Taylor r = a;
    r.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k < r.stored(); ++k) {
      double acc = a.c_[static_cast<size_t>(k)];
      for (int j = 1; j < k; ++j) acc -= j * r.c_[static_cast<size_t>(j)] * a.c_[static_cast<size_t>(k - j)] / k;
      r.c_[static_cast<size_t>(k)] = acc / a.c_[0];
    }
    return r;
  }

  friend void sincos(const Taylor& a, Taylor& s, Taylor& c) {
    s = a;
    c = a;
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (int k = 1; k < a.stored(); ++k) {
      double as = 0.0;
      double ac = 0.0;
      for (int j = 1; j <= k; ++j) {
        const double ja = j * a.c_[static_cast<size_t>(j)];
        as += ja * c.c_[static_cast<size_t>(k - j)];
        ac -= ja * s.c_[static_cast<size_t>(k - j)];
      }
      s.c_[static_cast<size_t>(k)] = as / k;
      c.c_[static_cast<size_t>(k)] = ac / k;
    }
  }

  friend Taylor sin(const Taylor& a) {
    Taylor s, c;
    sincos(a, s, c);
    return s;
  }

  friend Taylor cos(const Taylor& a) {
    Taylor s, c;
    sincos(a, s, c);
    return c;
  }

  friend Taylor pow(const Taylor& a, int n) {
    if (n < 0) return Taylor(1.0) / pow(a, -n);
    Taylor r(1.0);
    Taylor base = a;
    while (n > 0) {
      if (n & 1) r = r * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return r;
  }

  static double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  }

 private:
  static Taylor blank(const Taylor& a, const Taylor& b) {
    const int order = std::min(a.order_, b.order_);
    if (order == kExact) return Taylor(0.0);
    return zero(order);
  }

  static Taylor scaled(const Taylor& a, double k) {
    Taylor r = a;
    for (auto& v : r.c_) v *= k;
    return r;
  }

  int order_;
  std::vector<double> c_;
};

/// f(g(d)) for a series g with zero constant term.
inline Taylor compose(const Taylor& f, const Taylor& g) {
  if (g[0] != 0.0) fail(ErrorCode::InvalidArgument, "compose: inner series must vanish at the origin");
  if (g.is_exact()) return Taylor(f[0]);
  const int order = std::min(f.order(), g.order());
  Taylor acc = Taylor::zero(order);
  acc.coef(0) = f[order];
  for (int k = order - 1; k >= 0; --k) acc = acc * g + Taylor(f[k]);
  return acc.with_order(order);
}

/// Compositional inverse of g (g(0) = 0, g'(0) != 0): the series h with g(h(d)) = d.
inline Taylor revert(const Taylor& g) {
  if (g[0] != 0.0 || g[1] == 0.0) fail(ErrorCode::InvalidArgument, "revert: need g(0) = 0 and g'(0) != 0");
  const int order = g.order();
  Taylor h = Taylor::zero(order);
  if (order >= 1) h.coef(1) = 1.0 / g[1];
  // Each sweep fixes the next coefficient: h <- h + (d - g(h)) / g'(0).
  const Taylor identity = Taylor::variable(0.0, order);
  for (int sweep = 2; sweep <= order; ++sweep) {
    const Taylor residual = identity - compose(g, h);
    h = h + residual * Taylor(1.0 / g[1]);
  }
  return h;
}

/// Re-expand a series around a new centre offset `delta`, keeping the order.
inline Taylor recentre(const Taylor& f, double delta) {
  const int n = f.stored();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    double binom = 1.0;  // C(j, k) for j = k, k+1, ...
    double pw = 1.0;     // delta^(j - k)
    for (int j = k; j < n; ++j) {
      acc += binom * f[j] * pw;
      binom = binom * (j + 1) / (j + 1 - k);
      pw *= delta;
    }
    out[static_cast<size_t>(k)] = acc;
  }
  return Taylor(std::move(out));
}

/// Horner evaluation of a polynomial (ascending coefficients) on any scalar ring.
template <typename T>
T horner(std::span<const double> coeffs, const T& x) {
  T acc(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + T(*it);
  return acc;
}

}  // namespace ruledkit
