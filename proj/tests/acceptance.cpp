// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "abelext/counting.hpp"
#include "abelext/fqcensus.hpp"
#include "abelext/lfunc.hpp"
#include "abelext/numeric.hpp"
#include "abelext/tauberian.hpp"
#include "abelext/verify.hpp"

using namespace abelext;
using fqcensus::FieldParams;
using fqcensus::PrimeCensus;
namespace lf = abelext::lfunc;
namespace tb = abelext::tauberian;
namespace ct = abelext::counting;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. Census oracle equivalence, p in {2,3,5,7}, d <= 8, exact, under 10 s.
void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int d = 1; d <= 8 && ok; ++d) {
      auto list = fqcensus::enumerate_irreducibles(p, d);
      if (BigInt(list.size()) != fqcensus::count_irreducibles(p, d)) {
        ok = false;
        detail = "mismatch at p=" + std::to_string(p) + " d=" + std::to_string(d);
      }
    }
  }
  double elapsed = seconds_since(t0);
  if (ok && elapsed >= 10.0) {
    ok = false;
    detail = "exceeded 10 s";
  }
  if (ok) detail = "formula = enumeration for p in {2,3,5,7}, d <= 8 (" + fmt(elapsed) + " s)";
  report(1, ok, detail);
}

// 2. Triple-oracle equality within budgets; series = dp through n = 200.
void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  struct Case {
    long p, ell;
    int max_n;
  };
  for (Case c : {Case{2, 3, 4}, Case{2, 5, 2}, Case{3, 2, 8}, Case{5, 2, 8}, Case{5, 3, 4},
                 Case{7, 2, 7}}) {
    auto params = FieldParams::make(c.p, c.ell);
    PrimeCensus census = PrimeCensus::make(c.p, params.alpha * c.max_n);
    census.attach_lists(std::max(1, params.alpha * c.max_n / 2));
    auto s = ct::exact_counts_series(params, census, c.max_n);
    auto d = ct::exact_counts_dp(params, census, c.max_n);
    auto e = ct::exact_counts_enumerative(params, census, c.max_n);
    if (s.values != d.values || s.values != e.values) {
      ok = false;
      detail = "triple-oracle mismatch at (" + std::to_string(c.p) + "," +
               std::to_string(c.ell) + ")";
      break;
    }
  }
  if (ok) {
    for (auto [q, ell] : {std::pair<long, long>{4, 3}, {4, 5}, {2, 3}}) {
      auto params = FieldParams::make(q, ell);
      PrimeCensus census = PrimeCensus::make(q, params.alpha * 200);
      auto s = ct::exact_counts_series(params, census, 200);
      auto d = ct::exact_counts_dp(params, census, 200);
      if (s.values != d.values) {
        ok = false;
        detail = "series/dp mismatch at (" + std::to_string(q) + "," + std::to_string(ell) + ")";
        break;
      }
    }
  }
  double elapsed = seconds_since(t0);
  if (ok && elapsed >= 30.0) {
    ok = false;
    detail = "exceeded 30 s";
  }
  if (ok) detail = "six enumerated pairs and three deep series/dp pairs agree (" +
                   fmt(elapsed) + " s)";
  report(2, ok, detail);
}

// 3. a_2(n) = 2(q^n - q^{n-1}) exactly for n in [2, 100], q in {3, 5, 7}.
void criterion_3() {
  bool ok = true;
  std::string detail;
  for (long q : {3L, 5L, 7L}) {
    auto params = FieldParams::make(q, 2);
    PrimeCensus census = PrimeCensus::make(q, 100);
    auto t = ct::exact_counts_series(params, census, 100);
    for (int n = 2; n <= 100 && ok; ++n) {
      BigInt expected = 2 * (pow_bigint(BigInt(q), static_cast<unsigned>(n)) -
                             pow_bigint(BigInt(q), static_cast<unsigned>(n - 1)));
      if (t.a(n) != expected) {
        ok = false;
        detail = "mismatch at q=" + std::to_string(q) + " n=" + std::to_string(n);
      }
    }
  }
  if (ok) detail = "quadratic closed form exact for q in {3,5,7}, n in [2,100]";
  report(3, ok, detail);
}

// 4. Identity suite coefficientwise through order 24.
void criterion_4() {
  bool ok = true;
  std::string detail;
  const int N = 24;
  for (auto [q, ell] : {std::pair<long, long>{2, 3}, {2, 5}, {3, 7}, {4, 3}, {4, 5}, {5, 2}}) {
    auto params = FieldParams::make(q, ell);
    PrimeCensus census = PrimeCensus::make(q, params.alpha * N);
    auto zeta = lf::verify_identity(lf::Identity::zeta_factorization, params, census, N);
    auto lemma = lf::verify_identity(lf::Identity::lemma_f, params, census, N);
    if (!zeta.ok || !lemma.ok) {
      ok = false;
      detail = "identity fails at (" + std::to_string(q) + "," + std::to_string(ell) +
               ") index " + std::to_string(zeta.ok ? lemma.first_mismatch : zeta.first_mismatch);
      break;
    }
  }
  if (ok) {
    auto cubic = lf::verify_identity(lf::Identity::cubic_ii, FieldParams::make(2, 3),
                                     PrimeCensus::make(2, 48), N);
    if (!cubic.ok) {
      ok = false;
      detail = "cubic case (ii) identity fails at index " + std::to_string(cubic.first_mismatch);
    }
  }
  if (ok) detail = "zeta factorization, f = zeta^w g, and the even-degree identity hold to order 24";
  report(4, ok, detail);
}

// 5. Error exponent <= alpha/2 + 0.2 over n in [30, 60] for (2,3) and (4,5);
//    the (4,5) predictor has degree 1 and unit leading coefficient after the
//    r-normalization, to 1e-9.
void criterion_5() {
  bool ok = true;
  std::string detail;
  double worst = -1e9;
  for (auto [q, ell] : {std::pair<long, long>{2, 3}, {4, 5}}) {
    auto params = FieldParams::make(q, ell);
    PrimeCensus census = PrimeCensus::make(q, params.alpha * 90);
    auto model = tb::build_field_model(params, census, 90, 40);
    auto f = lf::build_f_series(params, census, 60);
    const double bound = params.alpha / 2.0 + 0.2;
    const double log_q = std::log(static_cast<double>(q));
    for (long n = 30; n <= 60 && ok; ++n) {
      Rational res = f[static_cast<int>(n)] - tb::predict_coefficient(model.series, n);
      if (res == 0) continue;
      if (res < 0) res = -res;
      double expo = static_cast<double>(boost::multiprecision::log(to_real(res))) /
                    (static_cast<double>(n) * log_q);
      worst = std::max(worst, expo);
      if (expo > bound) {
        ok = false;
        detail = "exponent " + fmt(expo) + " > " + fmt(bound) + " at (q,ell)=(" +
                 std::to_string(q) + "," + std::to_string(ell) + ") n=" + std::to_string(n);
      }
    }
    if (ok && ell == 5) {
      if (model.series.Q.size() != 2 || model.series.Q.back() == 0) {
        ok = false;
        detail = "predictor for (4,5) is not of degree 1";
      } else {
        // normalization P = Q (w-1)! / (r log^w q^alpha), with r from the product route
        Real log_qa = Real(params.alpha) * boost::multiprecision::log(to_real(params.q));
        Real lead = to_real(model.c1) * Real(factorial(static_cast<unsigned>(params.w - 1))) /
                    (model.r_product * boost::multiprecision::pow(log_qa, params.w));
        if (boost::multiprecision::abs(lead - 1) > Real(1e-9)) {
          ok = false;
          detail = "normalized predictor not monic: leading " + decimal_string(lead, 12);
        }
      }
    }
    if (!ok) break;
  }
  if (ok) detail = "worst exponent " + fmt(worst) + " within alpha/2 + 0.2; (4,5) monic to 1e-9";
  report(5, ok, detail);
}

// 6. Cubic second-order term at q = 4: |a_3(n) - g(1) q^n (n + 1 + shift)|
//    <= K q^{0.7 n} on [10, 60], K fitted on [10, 20].
void criterion_6() {
  bool ok = true;
  std::string detail;
  const long q = 4;
  auto params = FieldParams::make(q, 3);
  PrimeCensus census = PrimeCensus::make(q, 60);
  auto counts = ct::exact_counts_series(params, census, 60);
  lf::GAtOne g = lf::g_at_one(params, census, 40);
  Real shift = g.second_order_shift();
  std::vector<Real> ratio(61);
  Real qn(1);
  for (long n = 1; n <= 60; ++n) {
    qn *= q;
    Real predicted = g.g1 * qn * (Real(n) + 1 + shift);
    Real resid = boost::multiprecision::abs(to_real(Rational(counts.a(n))) - predicted);
    ratio[static_cast<std::size_t>(n)] =
        resid / boost::multiprecision::exp(Real(0.7) * Real(n) * boost::multiprecision::log(Real(q)));
  }
  Real k(0);
  for (long n = 10; n <= 20; ++n)
    if (ratio[static_cast<std::size_t>(n)] > k) k = ratio[static_cast<std::size_t>(n)];
  for (long n = 10; n <= 60 && ok; ++n) {
    if (ratio[static_cast<std::size_t>(n)] > k) {
      ok = false;
      detail = "residual escapes fitted K q^{0.7n} at n=" + std::to_string(n);
    }
  }
  if (ok) detail = "second-order prediction holds on [10,60] with K = " +
                   decimal_string(k, 6) + " fitted on [10,20]";
  report(6, ok, detail);
}

// 7. Cubic leading constant at q = 2: |a_3(n) q^{-2n} - C| <= K q^{-0.8 n}
//    on [15, 40], K fitted on [15, 20].
void criterion_7() {
  bool ok = true;
  std::string detail;
  const long q = 2;
  auto params = FieldParams::make(q, 3);  // alpha = 2
  PrimeCensus census = PrimeCensus::make(q, 80);
  auto counts = ct::exact_counts_series(params, census, 40);
  auto cep = lf::cubic_even_product(q, census, 60);
  std::vector<Real> ratio(41);
  for (long n = 1; n <= 40; ++n) {
    Rational qpow(1, pow_bigint(BigInt(q), static_cast<unsigned>(2 * n)));
    Real scaled = to_real(Rational(counts.a(n)) * qpow);
    Real resid = boost::multiprecision::abs(scaled - cep.value);
    ratio[static_cast<std::size_t>(n)] =
        resid * boost::multiprecision::exp(Real(0.8) * Real(n) * boost::multiprecision::log(Real(q)));
  }
  Real k(0);
  for (long n = 15; n <= 20; ++n)
    if (ratio[static_cast<std::size_t>(n)] > k) k = ratio[static_cast<std::size_t>(n)];
  for (long n = 15; n <= 40 && ok; ++n) {
    if (ratio[static_cast<std::size_t>(n)] > k) {
      ok = false;
      detail = "scaled residual escapes fitted K q^{-0.8n} at n=" + std::to_string(n);
    }
  }
  if (ok) detail = "a_3(n) q^{-2n} -> C with K = " + decimal_string(k, 6) + " fitted on [15,20]";
  report(7, ok, detail);
}

// 8. Dual-route r agreement to 1e-6; closed-form chain at (3,2) to 1e-9.
void criterion_8() {
  bool ok = true;
  std::string detail;
  for (auto [q, ell] : {std::pair<long, long>{2, 3}, {4, 3}, {3, 2}, {4, 5}}) {
    auto params = FieldParams::make(q, ell);
    PrimeCensus census = PrimeCensus::make(q, params.alpha * 60);
    auto model = tb::build_field_model(params, census, 60, 40);
    Real rel = boost::multiprecision::abs(model.r_series.value - model.r_product) /
               model.r_product;
    if (rel > Real(1e-6)) {
      ok = false;
      detail = "routes differ by " + decimal_string(rel, 4) + " at (" + std::to_string(q) + "," +
               std::to_string(ell) + ")";
      break;
    }
    if (q == 3 && ell == 2) {
      Real closed = to_real(Rational(2, 3)) / boost::multiprecision::log(Real(3));
      Real err = boost::multiprecision::abs(model.r_series.value - closed) / closed;
      if (err > Real(1e-9)) {
        ok = false;
        detail = "closed-form r off by " + decimal_string(err, 4) + " at (3,2)";
        break;
      }
    }
  }
  if (ok) detail = "product and series routes agree to 1e-6; (3,2) closed form to 1e-9";
  report(8, ok, detail);
}

// 9. Synthetic Tauberian exactness and the analytic-polynomial stability.
void criterion_9() {
  bool ok = true;
  std::string detail;
  using Series = abelext::powseries::TruncatedSeries<Rational>;
  for (long q : {2L, 3L, 5L}) {
    const int order = 40;
    Series geo(order, 1), dbl(order, 1);
    Rational p(1);
    for (int n = 0; n <= order; ++n) {
      geo[n] = p;
      dbl[n] = p * (n + 1);
      p *= q;
    }
    tb::PoleData p1{Rational(1, q), 1};
    tb::PoleData p2{Rational(1, q), 2};
    auto m1 = tb::model_from_series(geo, p1, tb::auto_envelope(tb::strip_pole(geo, p1), Rational(q)));
    auto m2 = tb::model_from_series(dbl, p2, tb::auto_envelope(tb::strip_pole(dbl, p2), Rational(q)));
    for (long n = 0; n <= order - 2 && ok; ++n) {
      if (tb::predict_coefficient(m1, n) != geo[static_cast<int>(n)] ||
          tb::predict_coefficient(m2, n) != dbl[static_cast<int>(n)]) {
        ok = false;
        detail = "nonzero synthetic residual at q=" + std::to_string(q) +
                 " n=" + std::to_string(n);
      }
    }
    if (!ok) break;
    Series with_h = dbl;
    with_h[0] += 9;
    with_h[2] -= 4;
    with_h[7] += 1;
    auto mh =
        tb::model_from_series(with_h, p2, tb::auto_envelope(tb::strip_pole(with_h, p2), Rational(q)));
    if (mh.Q != m2.Q) {
      ok = false;
      detail = "polynomial part changed the predictor at q=" + std::to_string(q);
      break;
    }
  }
  if (ok) detail = "zero residual for w = 1, 2 generators; polynomial part leaves Q unchanged";
  report(9, ok, detail);
}

// 10. Non-integer w demo: 1/sqrt(pi) to 1% raw at n = 1e4, 0.02% corrected.
void criterion_10() {
  const long n = 10000;
  const double inv_sqrt_pi = 0.5641895835477563;
  double x = static_cast<double>(tb::scaled_pole_coefficient(Real(0.5), n));
  double raw = std::abs(x / inv_sqrt_pi - 1.0);
  double corrected = std::abs(x / (inv_sqrt_pi * (1 - 1.0 / (8.0 * n))) - 1.0);
  bool ok = raw <= 0.01 && corrected <= 0.0002;
  std::string detail = ok ? "raw error " + fmt(raw) + ", corrected " + fmt(corrected)
                          : "raw " + fmt(raw) + " or corrected " + fmt(corrected) +
                                " outside 1% / 0.02%";
  report(10, ok, detail);
}

// 11. Appendix lemma checks: 1/n^2 residual scaling and the keyhole bound.
void criterion_11() {
  bool ok = true;
  std::string detail;
  auto r1 = tb::gamma_ratio_check(0.5, 1000);
  auto r2 = tb::gamma_ratio_check(0.5, 2000);
  auto r4 = tb::gamma_ratio_check(0.5, 4000);
  double s1 = static_cast<double>(r2.residual / r1.residual);
  double s2 = static_cast<double>(r4.residual / r2.residual);
  if (s1 < 0.1875 || s1 > 0.3125 || s2 < 0.1875 || s2 > 0.3125) {
    ok = false;
    detail = "gamma-ratio doubling factors " + fmt(s1) + ", " + fmt(s2) + " outside 1/4 +- 25%";
  }
  if (ok) {
    for (long n : {50L, 100L, 200L}) {
      auto check = tb::keyhole_integral_check(Rational(1), 0.5, 0.5, 2, n);
      double allowed = 10.0 / (static_cast<double>(n) * n) + std::pow(2.0, -0.5 * n);
      if (static_cast<double>(check.relative_error) > allowed) {
        ok = false;
        detail = "keyhole error " + fmt(static_cast<double>(check.relative_error)) +
                 " above " + fmt(allowed) + " at n=" + std::to_string(n);
        break;
      }
    }
  }
  if (ok) detail = "residual quarters on doubling (" + fmt(s1) + ", " + fmt(s2) +
                   "); keyhole within 10/n^2 + q^{-n/2}";
  report(11, ok, detail);
}

// 12. The full verification gate runs clean in under 60 s.
void criterion_12() {
  auto t0 = std::chrono::steady_clock::now();
  auto results = verify::run_verification({}, true);
  double elapsed = seconds_since(t0);
  bool ok = verify::all_ok(results) && elapsed < 60.0;
  std::string detail;
  if (!verify::all_ok(results)) {
    for (const auto& r : results)
      if (!r.ok) detail = "check " + std::to_string(r.index) + " (" + r.name + ") failed";
  } else if (elapsed >= 60.0) {
    detail = "verification took " + fmt(elapsed) + " s";
  } else {
    detail = std::to_string(results.size()) + " checks in " + fmt(elapsed) + " s";
  }
  report(12, ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (failures == 0)
    std::printf("all 12 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
