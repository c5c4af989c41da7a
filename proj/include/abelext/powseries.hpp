#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "abelext/numeric.hpp"

namespace abelext::powseries {

// Truncated formal power series with exactly order+1 known coefficients.
// `scale` tags the formal variable (u = q^{-scale*s}); mixing scales is an
// error, never a silent reinterpretation.
template <class R>
class TruncatedSeries {
 public:
  TruncatedSeries(int order, int scale) : scale_(scale), c_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    if (scale < 1) throw std::invalid_argument("variable scale must be >= 1");
  }

  static TruncatedSeries constant(const R& v, int order, int scale) {
    TruncatedSeries f(order, scale);
    f.c_[0] = v;
    return f;
  }

  static TruncatedSeries one(int order, int scale) { return constant(R(1), order, scale); }

  static TruncatedSeries from_coeffs(std::vector<R> coeffs, int scale) {
    if (coeffs.empty()) throw std::invalid_argument("series needs a constant term");
    TruncatedSeries f(static_cast<int>(coeffs.size()) - 1, scale);
    f.c_ = std::move(coeffs);
    return f;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  int scale() const { return scale_; }

  const R& operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }
  R& operator[](int n) { return c_.at(static_cast<std::size_t>(n)); }
  const std::vector<R>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const R& v : c_)
      if (v != 0) return false;
    return true;
  }

  // index of the first nonzero coefficient; order+1 when zero
  int valuation() const {
    for (int n = 0; n <= order(); ++n)
      if (c_[static_cast<std::size_t>(n)] != 0) return n;
    return order() + 1;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.scale_ == b.scale_ && a.c_ == b.c_;
  }

 private:
  int scale_;
  std::vector<R> c_;
};

namespace detail {

inline void check_scales(int a, int b) {
  if (a != b)
    throw std::invalid_argument("variable scale mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

}  // namespace detail

template <class R>
TruncatedSeries<R> add(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
  detail::check_scales(f.scale(), g.scale());
  int n = std::min(f.order(), g.order());
  TruncatedSeries<R> r(n, f.scale());
  for (int i = 0; i <= n; ++i) r[i] = f[i] + g[i];
  return r;
}

template <class R>
TruncatedSeries<R> negate(const TruncatedSeries<R>& f) {
  TruncatedSeries<R> r(f.order(), f.scale());
  for (int i = 0; i <= f.order(); ++i) r[i] = -f[i];
  return r;
}

template <class R>
TruncatedSeries<R> sub(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
  return add(f, negate(g));
}

/// Cauchy product truncated at min(orders).
template <class R>
TruncatedSeries<R> mul(const TruncatedSeries<R>& f, const TruncatedSeries<R>& g) {
  detail::check_scales(f.scale(), g.scale());
  int n = std::min(f.order(), g.order());
  TruncatedSeries<R> r(n, f.scale());
  for (int i = 0; i <= n; ++i) {
    if (f[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (g[j] == 0) continue;
      r[i + j] += f[i] * g[j];
    }
  }
  return r;
}

/// Multiplicative inverse through the full order; requires a unit constant term.
template <class R>
TruncatedSeries<R> invert(const TruncatedSeries<R>& f) {
  if (f[0] == 0) throw std::invalid_argument("cannot invert a series with zero constant term");
  const int n = f.order();
  TruncatedSeries<R> r(n, f.scale());
  r[0] = R(1) / f[0];
  for (int k = 1; k <= n; ++k) {
    R acc(0);
    for (int i = 1; i <= k; ++i) acc += f[i] * r[k - i];
    r[k] = -acc / f[0];
  }
  return r;
}

/// Integer power by repeated squaring; negative exponents go through invert.
template <class R>
TruncatedSeries<R> pow_int(const TruncatedSeries<R>& f, long m) {
  if (m < 0) return pow_int(invert(f), -m);
  TruncatedSeries<R> acc = TruncatedSeries<R>::one(f.order(), f.scale());
  TruncatedSeries<R> base = f;
  unsigned long e = static_cast<unsigned long>(m);
  while (e) {
    if (e & 1u) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return acc;
}

/// (1 + c u^d)^m expanded binomially: exact for arbitrary-precision m of
/// either sign, with only floor(N/d) terms ever touched.
inline TruncatedSeries<Rational> sparse_factor_power(int d, const Rational& c, const BigInt& m,
                                                     int order, int scale) {
  if (d < 1) throw std::invalid_argument("factor exponent spacing must be >= 1");
  TruncatedSeries<Rational> r(order, scale);
  r[0] = 1;
  BigInt binom(1);
  Rational cj(1);
  for (int j = 1; j * d <= order; ++j) {
    binom *= m - (j - 1);
    binom /= j;
    cj *= c;
    r[j * d] = Rational(binom) * cj;
  }
  return r;
}

// f^m for f with constant term 1 and arbitrary-precision integer m, via the
// binomial series in v = f - 1. The valuation of v caps the number of terms,
// which keeps huge census multiplicities cheap.
inline TruncatedSeries<Rational> pow_big(const TruncatedSeries<Rational>& f, const BigInt& m) {
  if (f[0] != 1) throw std::invalid_argument("pow_big requires constant term 1");
  const int n = f.order();
  TruncatedSeries<Rational> v = sub(f, TruncatedSeries<Rational>::one(n, f.scale()));
  TruncatedSeries<Rational> acc = TruncatedSeries<Rational>::one(n, f.scale());
  if (v.is_zero()) return acc;
  const int val = v.valuation();
  TruncatedSeries<Rational> vk = TruncatedSeries<Rational>::one(n, f.scale());
  BigInt binom(1);
  for (int k = 1; k * val <= n; ++k) {
    binom *= m - (k - 1);
    binom /= k;
    vk = mul(vk, v);
    if (binom == 0) break;
    for (int i = 0; i <= n; ++i)
      if (vk[i] != 0) acc[i] += Rational(binom) * vk[i];
  }
  return acc;
}

// Geometric envelope for the coefficients beyond the truncation order:
// |c_n| <= C rho^n for all n > order. C = 0 states the tail vanishes.
struct TailEnvelope {
  Rational C;
  Rational rho;
};

struct CertifiedValue {
  Rational value;
  Rational radius;  // |true - value| <= radius
};

// Evaluates f^(j)(x) for j = 0..j_max as exact finite sums, each paired with
// a tail radius derived from the caller's envelope. The envelope is the
// caller's analytic knowledge; nothing here guesses a convergence radius.
inline std::vector<CertifiedValue> eval_derivatives(const TruncatedSeries<Rational>& f,
                                                    const Rational& x, int j_max,
                                                    const TailEnvelope& tail) {
  if (j_max < 0 || j_max > f.order())
    throw std::invalid_argument("derivative order outside truncated data");
  if (tail.C < 0) throw std::invalid_argument("tail envelope must be nonnegative");
  const int n = f.order();
  const Rational ax = x < 0 ? Rational(-x) : x;
  std::vector<CertifiedValue> out;
  out.reserve(static_cast<std::size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) {
    CertifiedValue cv;
    // falling factorial n!/(n-j)! accumulated alongside the powers of x
    Rational xpow(1);
    BigInt ff(1);
    for (int i = 2; i <= j; ++i) ff *= i;  // j! at n = j
    BigInt fall = ff;
    for (int k = j; k <= n; ++k) {
      if (k > j) {
        fall = fall * k / (k - j);
        xpow *= x;
      }
      cv.value += f[k] * Rational(fall) * xpow;
    }
    if (tail.C == 0) {
      cv.radius = 0;
    } else {
      if (tail.rho <= 0) throw std::invalid_argument("tail envelope needs rho > 0");
      if (tail.rho * ax >= 1)
        throw std::invalid_argument("evaluation point outside certified radius");
      Rational kappa = tail.rho * ax * Rational(n + 2) / Rational(n + 2 - j);
      if (kappa >= 1)
        throw std::invalid_argument("evaluation point outside certified radius for derivative");
      // first discarded term, then the geometric domination of the rest
      BigInt fall1(1);
      for (int i = n + 2 - j; i <= n + 1; ++i) fall1 *= i;
      Rational t = tail.C * pow_rational(tail.rho, n + 1) * Rational(fall1) *
                   pow_rational(ax, n + 1 - j);
      cv.radius = t / (Rational(1) - kappa);
    }
    out.push_back(std::move(cv));
  }
  return out;
}

}  // namespace abelext::powseries
