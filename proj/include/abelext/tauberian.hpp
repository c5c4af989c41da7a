#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "abelext/detail/gamma.hpp"
#include "abelext/detail/quadrature.hpp"
#include "abelext/fqcensus.hpp"
#include "abelext/lfunc.hpp"
#include "abelext/numeric.hpp"
#include "abelext/powseries.hpp"

namespace abelext::tauberian {

using fqcensus::FieldParams;
using fqcensus::PrimeCensus;
using powseries::CertifiedValue;
using powseries::TailEnvelope;
using Series = powseries::TruncatedSeries<Rational>;

// Singularity data of a coefficient generating function: a pole of integer
// order w at u0 = q^{-a}.
struct PoleData {
  Rational u0;
  int w = 1;

  void validate() const {
    if (u0 == 0) throw std::invalid_argument("pole location must be nonzero");
    if (w < 1) throw std::invalid_argument("pole order must be a positive integer");
  }
};

// Multiplies f by (u - u0)^w, which removes the pole exactly: the result is
// the Taylor expansion about 0 of g(u) + h(u)(u - u0)^w, whose derivatives
// of order < w at u0 are those of g alone.
inline Series strip_pole(const Series& f, const PoleData& pole) {
  pole.validate();
  if (pole.w > f.order()) throw std::invalid_argument("pole order exceeds series order");
  std::vector<Rational> poly(static_cast<std::size_t>(pole.w) + 1);  // (u - u0)^w
  for (int k = 0; k <= pole.w; ++k) {
    Rational term = Rational(binomial(pole.w, k)) * pow_rational(-pole.u0, pole.w - k);
    poly[static_cast<std::size_t>(k)] = term;
  }
  Series out(f.order(), f.scale());
  for (int m = 0; m <= f.order(); ++m) {
    Rational acc(0);
    for (int k = 0; k <= pole.w && k <= m; ++k)
      acc += poly[static_cast<std::size_t>(k)] * f[m - k];
    out[m] = acc;
  }
  return out;
}

namespace detail {

// Per-derivative weight polynomials W_j(X) with Q(X) = sum_j g^{(j)}(u0) W_j(X);
// W_j = (-1)^{w-j} / (j! (w-1-j)!) * u0^{-(w-j)} * prod_{i=1}^{w-1-j} (X+i).
inline std::vector<std::vector<Rational>> q_weight_polynomials(const PoleData& pole) {
  pole.validate();
  const int w = pole.w;
  std::vector<std::vector<Rational>> weights;
  weights.reserve(static_cast<std::size_t>(w));
  for (int j = 0; j < w; ++j) {
    std::vector<Rational> poly{Rational(1)};  // prod_{i=1}^{w-1-j}(X+i)
    for (int i = 1; i <= w - 1 - j; ++i) {
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t t = 0; t < poly.size(); ++t) {
        next[t] += poly[t] * i;
        next[t + 1] += poly[t];
      }
      poly = std::move(next);
    }
    Rational scale = pow_rational(pole.u0, -(w - j)) /
                     Rational(factorial(static_cast<unsigned>(j)) *
                              factorial(static_cast<unsigned>(w - 1 - j)));
    if ((w - j) % 2 != 0) scale = -scale;
    for (Rational& cf : poly) cf *= scale;
    poly.resize(static_cast<std::size_t>(w));  // pad to degree w-1
    weights.push_back(std::move(poly));
  }
  return weights;
}

}  // namespace detail

/// Predictor polynomial Q with b_n = q^{an} Q(n) + (secondary-radius error);
/// coefficients ascending, degree w-1, leading coefficient equal to c1.
inline std::vector<Rational> q_polynomial(const std::vector<Rational>& g_jet,
                                          const PoleData& pole) {
  if (static_cast<int>(g_jet.size()) != pole.w)
    throw std::invalid_argument("jet must carry exactly w derivatives");
  auto weights = detail::q_weight_polynomials(pole);
  std::vector<Rational> q(static_cast<std::size_t>(pole.w));
  for (int j = 0; j < pole.w; ++j)
    for (int i = 0; i < pole.w; ++i)
      q[static_cast<std::size_t>(i)] +=
          g_jet[static_cast<std::size_t>(j)] * weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return q;
}

/// Leading Tauberian constant c1 = (-1)^w g(u0) u0^{-w} / (w-1)!.
inline Rational c1_constant(const Rational& g0, const PoleData& pole) {
  pole.validate();
  Rational c = g0 * pow_rational(pole.u0, -pole.w) /
               Rational(factorial(static_cast<unsigned>(pole.w - 1)));
  return pole.w % 2 == 0 ? c : -c;
}

/// Second constant c2 = (-1)^w u0^{-w}/(w-2)! * (g(u0) w/2 - g'(u0) u0); needs w >= 2.
inline Rational c2_constant(const Rational& g0, const Rational& g1, const PoleData& pole) {
  pole.validate();
  if (pole.w < 2) throw std::invalid_argument("c2 undefined at pole order 1");
  Rational inner = g0 * Rational(pole.w, 2) - g1 * pole.u0;
  Rational c = pow_rational(pole.u0, -pole.w) * inner /
               Rational(factorial(static_cast<unsigned>(pole.w - 2)));
  return pole.w % 2 == 0 ? c : -c;
}

struct C1C2 {
  Rational c1;
  std::optional<Rational> c2;
};

inline C1C2 c1_c2(const Rational& g0, const Rational& g1, const PoleData& pole) {
  C1C2 out{c1_constant(g0, pole), std::nullopt};
  if (pole.w >= 2) out.c2 = c2_constant(g0, g1, pole);
  return out;
}

struct RValue {
  Real value;
  Real radius;
};

/// r(K, ell) from the series route: r = Z_g(q^{-alpha}) (-q^alpha / log q^alpha)^w.
inline RValue r_from_series(const CertifiedValue& zg_at_pole, const FieldParams& params) {
  Rational qa = Rational(pow_bigint(params.q, static_cast<unsigned>(params.alpha)));
  Rational rational_part = zg_at_pole.value * pow_rational(qa, params.w);
  if (params.w % 2 != 0) rational_part = -rational_part;
  Real log_qa = Real(params.alpha) * boost::multiprecision::log(to_real(params.q));
  Real denom = boost::multiprecision::pow(log_qa, params.w);
  RValue r;
  r.value = to_real(rational_part) / denom;
  r.radius = to_real(zg_at_pole.radius * pow_rational(qa, params.w)) / denom;
  if (r.value <= 0) throw std::logic_error("r(K, ell) must be positive; upstream sign fault");
  return r;
}

// ---------------------------------------------------------------------------
// Model assembly: pole stripping -> jet at u0 -> Q, c1, c2, r.

struct JetEntry {
  Rational value;
  Rational radius;
};

struct SeriesModel {
  PoleData pole;
  TailEnvelope envelope;
  std::vector<JetEntry> jet;     // Z_g^{(j)}(u0), j < w
  std::vector<Rational> Q;       // ascending coefficients
  std::vector<Rational> Q_radius;
};

// Envelope |c_n| <= C rho^n for the stripped series: zero-tail when the top
// quarter of the computed coefficients vanishes identically (polynomial
// inputs), otherwise the smallest empirical C fitting the known range.
inline TailEnvelope auto_envelope(const Series& g, const Rational& rho) {
  if (rho <= 0) throw std::invalid_argument("envelope rho must be positive");
  const int n = g.order();
  int last_nonzero = -1;
  for (int i = 0; i <= n; ++i)
    if (g[i] != 0) last_nonzero = i;
  if (last_nonzero <= n - std::max(4, n / 4)) return {Rational(0), rho};
  Rational c(0);
  Rational rpow(1);
  for (int i = 0; i <= n; ++i) {
    Rational v = g[i] < 0 ? Rational(-g[i]) : g[i];
    v /= rpow;
    if (v > c) c = v;
    rpow *= rho;
  }
  return {c, rho};
}

inline SeriesModel model_from_series(const Series& f, const PoleData& pole,
                                     const TailEnvelope& envelope) {
  SeriesModel m;
  m.pole = pole;
  m.envelope = envelope;
  Series g = strip_pole(f, pole);
  auto vals = powseries::eval_derivatives(g, pole.u0, pole.w - 1, envelope);
  std::vector<Rational> jet_values;
  for (const auto& cv : vals) {
    m.jet.push_back({cv.value, cv.radius});
    jet_values.push_back(cv.value);
  }
  m.Q = q_polynomial(jet_values, pole);
  auto weights = detail::q_weight_polynomials(pole);
  m.Q_radius.assign(static_cast<std::size_t>(pole.w), Rational(0));
  for (int j = 0; j < pole.w; ++j)
    for (int i = 0; i < pole.w; ++i) {
      Rational wgt = weights[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (wgt < 0) wgt = -wgt;
      m.Q_radius[static_cast<std::size_t>(i)] += wgt * m.jet[static_cast<std::size_t>(j)].radius;
    }
  // internal consistency: the closed-form constants are the top coefficients
  if (m.Q.back() != c1_constant(jet_values[0], pole))
    throw std::logic_error("leading coefficient of Q must equal c1");
  if (pole.w >= 2 &&
      m.Q[static_cast<std::size_t>(pole.w) - 2] != c2_constant(jet_values[0], jet_values[1], pole))
    throw std::logic_error("subleading coefficient of Q must equal c2");
  return m;
}

/// Exact prediction q^{an} Q(n) for the stripped sequence (u0 = q^{-a}).
inline Rational predict_coefficient(const SeriesModel& m, long n) {
  Rational qn = pow_rational(m.pole.u0, -1);  // q^a
  Rational power(1);
  for (long i = 0; i < n; ++i) power *= qn;
  Rational qval(0);
  Rational npow(1);
  for (const Rational& c : m.Q) {
    qval += c * npow;
    npow *= n;
  }
  return power * qval;
}

// Full model for a field case: series-route constants plus the product-route
// r for cross-validation, with every radius carried along.
struct AsymptoticModel {
  FieldParams params;
  SeriesModel series;
  Rational c1;
  Rational c1_radius;
  std::optional<Rational> c2;
  Rational c2_radius;
  RValue r_series;
  Real r_product;
  Real r_product_radius;
  Rational second_order_shift;  // g'(1)/(g(1) log q), exact partial (w = 2 uses)
  double secondary_exponent = 0;  // a - delta = alpha/2, in log_q units
  int series_order = 0;
  int cutoff = 0;

  Rational predict_b(long n) const { return predict_coefficient(series, n); }

  Rational predict_a(long n) const {
    Rational v = predict_b(n) * 2;
    v /= params.ell - 1;
    return v;
  }
};

/// Dyadic upper bound for q^{alpha/2}, the secondary radius of the stripped series.
inline Rational secondary_rho(const BigInt& q, int alpha) {
  BigInt qa = pow_bigint(q, static_cast<unsigned>(alpha));
  if (alpha % 2 == 0) return Rational(pow_bigint(q, static_cast<unsigned>(alpha / 2)));
  const BigInt scale = 1'000'000;
  const BigInt scaled = qa * scale * scale;
  return Rational(boost::multiprecision::sqrt(scaled) + 1, scale);
}

inline AsymptoticModel build_field_model(const FieldParams& params, const PrimeCensus& census,
                                         int order, int cutoff) {
  AsymptoticModel m;
  m.params = params;
  m.series_order = order;
  m.cutoff = cutoff;
  m.secondary_exponent = params.alpha / 2.0;

  Series f = lfunc::build_f_series(params, census, order);
  PoleData pole{Rational(1, pow_bigint(params.q, static_cast<unsigned>(params.alpha))), params.w};
  TailEnvelope env = auto_envelope(strip_pole(f, pole), secondary_rho(params.q, params.alpha));
  m.series = model_from_series(f, pole, env);

  m.c1 = m.series.Q.back();
  m.c1_radius = m.series.Q_radius.back();
  if (params.w >= 2) {
    m.c2 = m.series.Q[static_cast<std::size_t>(params.w) - 2];
    m.c2_radius = m.series.Q_radius[static_cast<std::size_t>(params.w) - 2];
  }
  m.r_series = r_from_series({m.series.jet[0].value, m.series.jet[0].radius}, params);

  lfunc::GAtOne g1 = lfunc::g_at_one(params, census, cutoff);
  Real log_qa = Real(params.alpha) * g1.ln_q;
  Real denom = boost::multiprecision::pow(log_qa, params.w);
  m.r_product = g1.g1 / denom;
  m.r_product_radius = g1.g1_tail / denom;
  m.second_order_shift = g1.ratio;
  return m;
}

// One line of exact-vs-predicted comparison.
struct ComparisonRow {
  long n = 0;
  BigInt exact;
  Rational predicted;
  Rational residual;                       // exact - predicted
  std::optional<double> residual_exponent; // log_q |residual| / n
};

inline std::vector<ComparisonRow> comparison_table(const AsymptoticModel& model,
                                                   const std::vector<BigInt>& a_values,
                                                   long n_from, long n_to) {
  if (n_from < 1 || n_to < n_from) throw std::invalid_argument("bad comparison range");
  if (n_to > static_cast<long>(a_values.size()))
    throw std::invalid_argument("exact table too short for comparison range");
  const double log_q = static_cast<double>(boost::multiprecision::log(to_real(model.params.q)));
  std::vector<ComparisonRow> rows;
  for (long n = n_from; n <= n_to; ++n) {
    ComparisonRow row;
    row.n = n;
    row.exact = a_values[static_cast<std::size_t>(n - 1)];
    row.predicted = model.predict_a(n);
    row.residual = Rational(row.exact) - row.predicted;
    if (row.residual != 0) {
      double lr = static_cast<double>(
          boost::multiprecision::log(to_real(row.residual < 0 ? Rational(-row.residual)
                                                              : row.residual)));
      row.residual_exponent = lr / (static_cast<double>(n) * log_q);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Synthetic generators and the appendix lemma verifications.

/// Coefficients of (1 - q^a u)^{-w} by the ratio recurrence, in high precision.
inline std::vector<Real> binomial_pole_series(const Rational& a, const Real& w, const BigInt& q,
                                              int count) {
  if (a <= 0) throw std::invalid_argument("a must be positive");
  if (w <= 0) throw std::invalid_argument("w must be positive");
  if (count < 1) throw std::invalid_argument("need at least one coefficient");
  Real qa = boost::multiprecision::exp(to_real(a) * boost::multiprecision::log(to_real(q)));
  std::vector<Real> c(static_cast<std::size_t>(count));
  c[0] = 1;
  for (int n = 0; n + 1 < count; ++n) c[static_cast<std::size_t>(n) + 1] =
      c[static_cast<std::size_t>(n)] * (w + n) / (n + 1) * qa;
  return c;
}

/// Exact variant for integer pole order and integer a.
inline std::vector<Rational> binomial_pole_series_exact(int a, int w, const BigInt& q, int count) {
  if (a < 1 || w < 1) throw std::invalid_argument("integer variant needs a, w >= 1");
  Rational qa(pow_bigint(q, static_cast<unsigned>(a)));
  std::vector<Rational> c(static_cast<std::size_t>(count));
  c[0] = 1;
  for (int n = 0; n + 1 < count; ++n) c[static_cast<std::size_t>(n) + 1] =
      c[static_cast<std::size_t>(n)] * Rational(w + n, n + 1) * qa;
  return c;
}

// Scaled central-coefficient sequence coef_n q^{-an} n^{w-1} of (1 - q^a u)^{-w};
// converges to 1/Gamma(w). The q^{an} factor cancels in the recurrence.
inline Real scaled_pole_coefficient(const Real& w, long n) {
  Real s(1);
  for (long k = 0; k < n; ++k) s = s * (w + k) / (k + 1);
  Real np = boost::multiprecision::exp((1 - w) * boost::multiprecision::log(Real(n)));
  return s * np;  // s * n^{-(w-1)} inverted: n^{1-w}
}

struct GammaRatioCheck {
  Real ratio;
  Real prediction;
  Real residual;
};

/// n! n^t / prod_{i=0}^n (t+i) against Gamma(t) (1 - (t^2+t)/(2n)).
inline GammaRatioCheck gamma_ratio_check(double t, long n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (t == std::floor(t) && t <= 0.0)
    throw std::invalid_argument("t must avoid the nonpositive integers");
  Real rt(t);
  Real ratio = boost::multiprecision::exp(rt * boost::multiprecision::log(Real(n))) / rt;
  for (long i = 1; i <= n; ++i) ratio = ratio * Real(i) / (rt + Real(i));
  GammaRatioCheck out;
  out.ratio = ratio;
  out.prediction = Real(detail::gamma_lanczos(t)) * (1 - Real(t * t + t) / (2 * Real(n)));
  out.residual = out.ratio - out.prediction;
  return out;
}

struct KeyholeCheck {
  Real integral;     // raw value, q^{a(n+w)} included
  Real prediction;
  Real relative_error;
};

// Real-segment integral int_{q^-a}^{q^{-a(1-delta)}} du / (u^{n+1} (u - q^{-a})^w)
// against Gamma(1-w) q^{a(n+w)} n^{w-1} (1 + (w^2-w)/(2n)). The endpoint
// singularity is removed by the substitution u - q^{-a} = q^{-a} z^{1/(1-w)}.
inline KeyholeCheck keyhole_integral_check(const Rational& a, double w, double delta,
                                           const BigInt& q, long n, double rel_tol = 1e-8) {
  if (w <= 0 || w >= 1) throw std::invalid_argument("keyhole check needs 0 < w < 1");
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must lie in (0, 1)");
  if (a <= 0 || n < 1) throw std::invalid_argument("bad keyhole parameters");
  const Real rw(w);
  const Real ln_q = boost::multiprecision::log(to_real(q));
  const Real v_top = boost::multiprecision::exp(to_real(a) * Real(delta) * ln_q) - 1;
  const Real z_top = boost::multiprecision::exp((1 - rw) * boost::multiprecision::log(v_top));
  const Real expo = Real(1) / (1 - rw);
  auto integrand = [&](const Real& z) -> Real {
    Real v = z <= 0 ? Real(0) : boost::multiprecision::exp(expo * boost::multiprecision::log(z));
    return boost::multiprecision::exp(Real(-(n + 1)) * boost::multiprecision::log1p(v));
  };
  Real first = detail::adaptive_simpson(integrand, Real(0), z_top, Real(1e-4));
  Real j = detail::adaptive_simpson(integrand, Real(0), z_top,
                                    boost::multiprecision::abs(first) * Real(rel_tol) / 64) /
           (1 - rw);
  Real prediction_scaled = Real(detail::gamma_lanczos(1.0 - w)) *
                           boost::multiprecision::exp((rw - 1) * boost::multiprecision::log(Real(n))) *
                           (1 + Real(w * w - w) / (2 * Real(n)));
  Real scale = boost::multiprecision::exp(to_real(a) * (Real(n) + rw) * ln_q);
  KeyholeCheck out;
  out.integral = j * scale;
  out.prediction = prediction_scaled * scale;
  out.relative_error = boost::multiprecision::abs(j - prediction_scaled) / prediction_scaled;
  return out;
}

}  // namespace abelext::tauberian
