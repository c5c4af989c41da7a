#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "abelext/fqcensus.hpp"
#include "abelext/numeric.hpp"
#include "abelext/powseries.hpp"

namespace abelext::lfunc {

using fqcensus::FieldParams;
using fqcensus::PrimeCensus;
using Series = powseries::TruncatedSeries<Rational>;

/// Zeta of F_{q^sigma}[t] expanded in u = q^{-sigma s}: coefficients q^{sigma n}.
inline Series zeta_series(const BigInt& q, int sigma, int N) {
  Series z(N, sigma);
  BigInt qs = pow_bigint(q, static_cast<unsigned>(sigma));
  BigInt p(1);
  for (int n = 0; n <= N; ++n) {
    z[n] = Rational(p);
    p *= qs;
  }
  return z;
}

// Coefficients of (1 + (ell-1)x)(1 - x)^{ell-1} = 1 + c_2 x^2 + ... + c_ell x^ell.
// Obtained by expansion; the x coefficient cancels identically.
struct HPolynomial {
  long ell;
  std::vector<BigInt> c;  // c[0..ell]

  const BigInt& coeff(int i) const { return c.at(static_cast<std::size_t>(i)); }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * x + Rational(c[i]);
    return acc;
  }

  BigInt abs_coeff_sum() const {
    BigInt s(0);
    for (const BigInt& v : c) s += v < 0 ? BigInt(-v) : v;
    return s;
  }
};

inline HPolynomial h_coefficients(long ell) {
  if (ell < 2) throw std::invalid_argument("ell must be >= 2");
  std::vector<BigInt> a(static_cast<std::size_t>(ell) + 1);  // (1-x)^{ell-1}
  for (long i = 0; i <= ell - 1; ++i) {
    BigInt b = binomial(ell - 1, i);
    a[static_cast<std::size_t>(i)] = (i % 2 == 0) ? b : -b;
  }
  std::vector<BigInt> c(static_cast<std::size_t>(ell) + 1);
  for (long i = 0; i <= ell; ++i) {
    c[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
    if (i >= 1) c[static_cast<std::size_t>(i)] += (ell - 1) * a[static_cast<std::size_t>(i) - 1];
  }
  if (c[1] != 0) throw std::logic_error("h-polynomial must have no linear term");
  return {ell, std::move(c)};
}

/// h(u^j) as a truncated series, one local factor of the analytic part.
inline Series h_factor_series(const HPolynomial& h, int j, int N, int scale) {
  Series f(N, scale);
  for (int i = 0; i * j <= N && i <= static_cast<int>(h.ell); ++i)
    f[i * j] = Rational(h.coeff(i));
  return f;
}

// Partial Euler product over alpha-divisible prime degrees, expanded in
// u = q^{-alpha s}; coefficient n is b_{alpha n}.
inline Series build_f_series(const FieldParams& params, const PrimeCensus& census, int N) {
  if (census.max_deg < params.alpha * N)
    throw std::invalid_argument("census too shallow for requested series order");
  Series f = Series::one(N, params.alpha);
  for (int j = 1; j <= N; ++j) {
    f = powseries::mul(
        f, powseries::sparse_factor_power(j, Rational(params.ell - 1),
                                          census.count(params.alpha * j), N, params.alpha));
  }
  return f;
}

namespace detail {

// prod over primes with gcd(alpha, deg) = d of (1 - u^{deg/d})^{-d * power * N_q(deg)}
inline Series L_d_power(const PrimeCensus& census, int alpha, int d, const BigInt& power, int N) {
  Series acc = Series::one(N, alpha);
  for (int m = d; m / d <= N; m += d) {
    if (std::gcd(alpha, m) != d) continue;
    BigInt expo = -BigInt(d) * power * census.count(m);
    acc = powseries::mul(acc, powseries::sparse_factor_power(m / d, Rational(-1), expo, N, alpha));
  }
  return acc;
}

}  // namespace detail

/// L_d(s) = prod_{P: (alpha, deg P) = d} (1 - q^{-(alpha deg(P)/d) s})^{-d} in u = q^{-alpha s}.
inline Series build_L_d_series(const BigInt& q, int alpha, int d, const PrimeCensus& census,
                               int N) {
  if (d < 1 || alpha % d != 0) throw std::invalid_argument("d must divide alpha");
  if (census.q != q) throw std::invalid_argument("census belongs to a different field");
  return detail::L_d_power(census, alpha, d, BigInt(1), N);
}

/// The analytic cofactor g with f = zeta_{A_alpha}^w * g, as a series in u = q^{-alpha s}.
inline Series g_series(const FieldParams& params, const PrimeCensus& census, int N) {
  if (census.max_deg < params.alpha * N)
    throw std::invalid_argument("census too shallow for requested series order");
  HPolynomial h = h_coefficients(params.ell);
  Series acc = Series::one(N, params.alpha);
  for (int j = 1; 2 * j <= N; ++j) {
    Series factor = h_factor_series(h, j, N, params.alpha);
    acc = powseries::mul(acc, powseries::pow_big(factor, census.count(params.alpha * j)));
  }
  for (int d = 1; d < params.alpha; ++d) {
    if (params.alpha % d != 0) continue;
    acc = powseries::mul(acc, detail::L_d_power(census, params.alpha, d, BigInt(-params.w), N));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Numeric partial products at s = 1 with explicit tail bounds.

// g(1) and the exact ratio g'(1)/(g(1) log q), both from the partial product
// over primes of degree <= cutoff. The ratio and its tail are exact rationals;
// only g(1) itself goes through high-precision logs.
struct GAtOne {
  Real g1;
  Real g1_tail;
  Rational ratio;        // g'(1) / (g(1) log q)
  Rational ratio_tail;
  Real ln_q;
  int cutoff = 0;

  Real gprime() const { return g1 * to_real(ratio) * ln_q; }
  Real second_order_shift() const { return to_real(ratio); }  // g'(1)/(g(1) log q)
};

inline GAtOne g_at_one(const FieldParams& params, const PrimeCensus& census, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (census.max_deg < cutoff) throw std::invalid_argument("census too shallow for cutoff");
  const BigInt& q = params.q;
  const long ell = params.ell;
  HPolynomial h = h_coefficients(ell);

  Real log_g(0);
  Rational ratio(0);
  for (int d = params.alpha; d <= cutoff; d += params.alpha) {
    Rational x(1, pow_bigint(q, static_cast<unsigned>(d)));
    Rational value = h.eval(x);
    if (value <= 0) throw std::logic_error("local factor must stay positive");
    log_g += to_real(census.count(d)) * boost::multiprecision::log(to_real(value));
    // d/ds log of the local factor, divided by log q
    ratio += Rational(census.count(d)) * Rational(ell - 1) * d * x *
             (Rational(1) / (1 - x) - Rational(1) / (1 + Rational(ell - 1) * x));
  }
  for (int d = 1; d < params.alpha; ++d) {
    if (params.alpha % d != 0) continue;
    for (int m = d; m <= cutoff; m += d) {
      if (std::gcd(params.alpha, m) != d) continue;
      Rational y(1, pow_bigint(q, static_cast<unsigned>(params.alpha * m / d)));
      Rational one_minus = 1 - y;
      log_g += to_real(census.count(m)) * Real(d) * Real(params.w) *
               boost::multiprecision::log(to_real(one_minus));
      ratio += Rational(census.count(m)) * params.w * params.alpha * m * y / one_minus;
    }
  }

  // log-tail of the h-product: |log h(x)| <= 2 Ch x^2 once Ch x^2 <= 1/2,
  // then sum_{d>D} N_q(d) q^{-2d} <= sum_{d>D} q^{-d} / (D+1)
  Rational Ch(h.abs_coeff_sum());
  Rational qD1(1, pow_bigint(q, static_cast<unsigned>(cutoff + 1)));
  if (Ch * qD1 * qD1 > Rational(1, 2))
    throw std::invalid_argument("cutoff too small for requested precision at this ell");
  Rational geom_tail = qD1 * q / (q - 1);  // sum_{d > D} q^{-d}
  Rational log_tail = 2 * Ch * geom_tail / (cutoff + 1);
  if (params.alpha > 1) {
    BigInt dsum(0);
    for (int d = 1; d < params.alpha; ++d)
      if (params.alpha % d == 0) dsum += d;
    log_tail += 2 * Rational(dsum) * params.w * geom_tail / (cutoff + 1);
  }
  if (log_tail > Rational(1, 2))
    throw std::invalid_argument("cutoff too small for requested precision");

  GAtOne out;
  out.ln_q = boost::multiprecision::log(to_real(q));
  out.g1 = boost::multiprecision::exp(log_g);
  out.g1_tail = out.g1 * 2 * to_real(log_tail);
  out.ratio = ratio;
  // term bounds: h-part <= 2 ell^2 q^{-d} per degree, L-part <= 2 w alpha q^{-m}
  out.ratio_tail = (2 * Rational(ell) * ell + 2 * Rational(params.w) * params.alpha) * geom_tail;
  out.cutoff = cutoff;
  return out;
}

/// Exact-rational partial product for tiny cutoffs (test oracle).
inline Rational g_partial_exact(const FieldParams& params, const PrimeCensus& census, int cutoff) {
  HPolynomial h = h_coefficients(params.ell);
  Rational acc(1);
  for (int d = params.alpha; d <= cutoff; d += params.alpha) {
    if (census.count(d) > 1'000'000) throw budget_error("exact partial product too large");
    Rational value = h.eval(Rational(1, pow_bigint(params.q, static_cast<unsigned>(d))));
    acc *= pow_rational(value, census.count(d).convert_to<int>());
  }
  for (int d = 1; d < params.alpha; ++d) {
    if (params.alpha % d != 0) continue;
    for (int m = d; m <= cutoff; m += d) {
      if (std::gcd(params.alpha, m) != d) continue;
      if (census.count(m) > 1'000'000) throw budget_error("exact partial product too large");
      Rational y(1, pow_bigint(params.q, static_cast<unsigned>(params.alpha * m / d)));
      acc *= pow_rational(1 - y, params.w * d * census.count(m).convert_to<int>());
    }
  }
  return acc;
}

// Leading constant of the cubic q = 2 (mod 3) case:
// zeta_A(2)^{-1} * prod over even-degree primes of (y+2)(y-1)/(y(y+1)), y = q^deg.
struct CubicEvenProduct {
  Real value;
  Real tail;
  int cutoff = 0;
};

namespace detail {

inline Rational cubic_even_local(const BigInt& q, int d) {
  BigInt y = pow_bigint(q, static_cast<unsigned>(d));
  return Rational((y + 2) * (y - 1), y * (y + 1));
}

}  // namespace detail

inline CubicEvenProduct cubic_even_product(const BigInt& q, const PrimeCensus& census,
                                           int cutoff) {
  if (q % 3 != 2) throw std::invalid_argument("cubic even product requires q = 2 (mod 3)");
  if (cutoff < 2 || cutoff % 2 != 0) throw std::invalid_argument("cutoff must be even and >= 2");
  if (census.max_deg < cutoff) throw std::invalid_argument("census too shallow for cutoff");
  Real log_p = boost::multiprecision::log(to_real(Rational(q - 1, q)));  // zeta_A(2)^{-1}
  for (int d = 2; d <= cutoff; d += 2)
    log_p += to_real(census.count(d)) *
             boost::multiprecision::log(to_real(detail::cubic_even_local(q, d)));
  // each local factor is 1 - 2/(y^2 + y), so |log| <= 4 q^{-2d}
  Rational qD1(1, pow_bigint(q, static_cast<unsigned>(cutoff + 1)));
  Rational log_tail = 4 * qD1 * q / (q - 1);
  CubicEvenProduct out;
  out.value = boost::multiprecision::exp(log_p);
  out.tail = out.value * 2 * to_real(log_tail);
  out.cutoff = cutoff;
  return out;
}

inline Rational cubic_even_partial_exact(const BigInt& q, const PrimeCensus& census, int cutoff) {
  if (q % 3 != 2) throw std::invalid_argument("cubic even product requires q = 2 (mod 3)");
  Rational acc(q - 1, q);
  for (int d = 2; d <= cutoff; d += 2) {
    if (census.count(d) > 1'000'000) throw budget_error("exact partial product too large");
    acc *= pow_rational(detail::cubic_even_local(q, d), census.count(d).convert_to<int>());
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Coefficientwise identity checks.

enum class Identity { zeta_factorization, lemma_f, cubic_ii };

struct IdentityCheck {
  bool ok = false;
  int first_mismatch = -1;  // -1 when ok
};

inline IdentityCheck verify_identity(Identity which, const FieldParams& params,
                                     const PrimeCensus& census, int N) {
  Series lhs = Series::one(N, params.alpha);
  Series rhs = Series::one(N, params.alpha);
  switch (which) {
    case Identity::zeta_factorization: {
      lhs = zeta_series(params.q, params.alpha, N);
      for (int d = 1; d <= params.alpha; ++d) {
        if (params.alpha % d != 0) continue;
        rhs = powseries::mul(rhs, build_L_d_series(params.q, params.alpha, d, census, N));
      }
      break;
    }
    case Identity::lemma_f: {
      lhs = build_f_series(params, census, N);
      rhs = powseries::mul(powseries::pow_int(zeta_series(params.q, params.alpha, N), params.w),
                           g_series(params, census, N));
      break;
    }
    case Identity::cubic_ii: {
      if (params.ell != 3 || params.q % 3 != 2)
        throw std::invalid_argument("cubic identity requires ell = 3 and q = 2 (mod 3)");
      lhs = build_f_series(params, census, N);  // alpha = 2 here
      rhs = zeta_series(params.q, 2, N);
      Series lin(N, 2);
      lin[0] = 1;
      lin[1] = Rational(-params.q);  // zeta_A(2s)^{-1}
      rhs = powseries::mul(rhs, lin);
      for (int j = 1; j <= N; ++j) {
        const BigInt& n2j = census.count(2 * j);
        rhs = powseries::mul(rhs, powseries::sparse_factor_power(j, Rational(2), n2j, N, 2));
        rhs = powseries::mul(rhs, powseries::sparse_factor_power(j, Rational(-1), n2j, N, 2));
        rhs = powseries::mul(rhs, powseries::sparse_factor_power(j, Rational(1), -n2j, N, 2));
      }
      break;
    }
  }
  for (int n = 0; n <= N; ++n)
    if (lhs[n] != rhs[n]) return {false, n};
  return {true, -1};
}

/// Smallest cutoff whose reported tails push g(1) uncertainty below eps.
inline int cutoff_for_precision(const FieldParams& params, const PrimeCensus& census, Real eps,
                                int max_cutoff = 400) {
  for (int D = 2; D <= std::min(max_cutoff, census.max_deg); ++D) {
    try {
      GAtOne g = g_at_one(params, census, D);
      if (g.g1_tail < eps * boost::multiprecision::abs(g.g1)) return D;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  throw std::invalid_argument("no cutoff within census depth reaches requested precision");
}

}  // namespace abelext::lfunc
