#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "abelext/counting.hpp"
#include "abelext/fqcensus.hpp"
#include "abelext/lfunc.hpp"
#include "abelext/numeric.hpp"
#include "abelext/powseries.hpp"
#include "abelext/tauberian.hpp"

namespace abelext::verify {

struct CheckResult {
  int index = 0;
  std::string name;
  bool ok = false;
  std::string detail;  // failure description, or a one-line summary
};

namespace detail {

class CensusCache {
 public:
  const fqcensus::PrimeCensus& get(long q, int depth) {
    auto it = cache_.find(q);
    if (it == cache_.end() || it->second.max_deg < depth)
      it = cache_.insert_or_assign(q, fqcensus::PrimeCensus::make(q, depth)).first;
    return it->second;
  }

 private:
  std::map<long, fqcensus::PrimeCensus> cache_;
};

inline std::string mismatch(const std::string& what) { return what; }

}  // namespace detail

// Every identity and oracle-equivalence suite, in a fixed deterministic
// order. Each entry throws or returns a failure string; the runner reports
// one result per check and stops at the first failure when asked to.
inline std::vector<CheckResult> run_verification(
    const std::function<void(const CheckResult&)>& progress = {}, bool stop_on_failure = true) {
  using fqcensus::FieldParams;
  using fqcensus::PrimeCensus;
  namespace ps = abelext::powseries;
  namespace lf = abelext::lfunc;
  namespace tb = abelext::tauberian;
  namespace ct = abelext::counting;

  detail::CensusCache censuses;
  std::vector<std::pair<std::string, std::function<std::string()>>> checks;

  checks.emplace_back("census-gauss-identity", [&] {
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L}) {
      for (int n = 1; n <= 16; ++n) {
        BigInt sum = 0;
        for (int d = 1; d <= n; ++d)
          if (n % d == 0) sum += d * fqcensus::count_irreducibles(q, d);
        if (sum != pow_bigint(BigInt(q), static_cast<unsigned>(n)))
          return "Gauss identity fails at q=" + std::to_string(q) + " n=" + std::to_string(n);
      }
    }
    return std::string{};
  });

  checks.emplace_back("census-enumeration-equivalence", [&] {
    for (long p : {2L, 3L, 5L, 7L}) {
      for (int d = 1; d <= 8; ++d) {
        auto list = fqcensus::enumerate_irreducibles(p, d);
        if (BigInt(list.size()) != fqcensus::count_irreducibles(p, d))
          return "count/enumeration mismatch at p=" + std::to_string(p) +
                 " d=" + std::to_string(d);
      }
    }
    return std::string{};
  });

  checks.emplace_back("census-trial-division-audit", [&] {
    for (long p : {2L, 3L, 5L, 7L}) {
      int depth = p <= 3 ? 6 : (p == 5 ? 5 : 4);
      PrimeCensus census = PrimeCensus::make(p, depth);
      census.attach_lists(depth);
      for (int d = 1; d <= depth; ++d)
        for (const auto& f : census.lists[d])
          if (!fqcensus::is_irreducible_trial_division(f, census))
            return "listed polynomial fails trial division at p=" + std::to_string(p) +
                   " d=" + std::to_string(d);
    }
    return std::string{};
  });

  checks.emplace_back("multiplicative-order-divides", [&] {
    for (long ell : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 16L, 25L}) {
        if (q % ell == 0) continue;
        if ((ell - 1) % fqcensus::multiplicative_order(q, ell) != 0)
          return "order does not divide ell-1 at q=" + std::to_string(q) +
                 " ell=" + std::to_string(ell);
      }
    }
    return std::string{};
  });

  checks.emplace_back("h-coefficient-laws", [&] {
    for (long ell = 2; ell <= 97; ++ell) {
      if (!is_prime_u64(static_cast<std::uint64_t>(ell))) continue;
      auto h = lf::h_coefficients(ell);
      if (h.coeff(1) != 0) return "h has a linear term at ell=" + std::to_string(ell);
      BigInt expected = (ell % 2 == 1) ? BigInt(ell - 1) : BigInt(-(ell - 1));
      if (h.coeff(static_cast<int>(ell)) != expected)
        return "top h coefficient wrong at ell=" + std::to_string(ell);
    }
    return std::string{};
  });

  checks.emplace_back("series-inverse-identity", [&] {
    using Series = ps::TruncatedSeries<Rational>;
    // deterministic pseudo-random rationals
    long state = 12345;
    auto next = [&state] {
      state = (state * 1103515245 + 12345) % 2147483648L;
      return Rational((state % 19) - 9, 1 + state % 5);
    };
    for (int trial = 0; trial < 20; ++trial) {
      Series f(12, 1);
      for (int i = 0; i <= 12; ++i) f[i] = next();
      if (f[0] == 0) f[0] = 1;
      if (ps::mul(f, ps::invert(f)) != Series::one(12, 1))
        return detail::mismatch("series inverse identity fails");
    }
    for (long m : {0L, 5L, 31L, 64L}) {
      Series base(9, 1);
      base[0] = 1;
      base[2] = Rational(3, 2);
      if (ps::sparse_factor_power(2, Rational(3, 2), m, 9, 1) != ps::pow_int(base, m))
        return detail::mismatch("sparse factor power disagrees with dense power");
    }
    return std::string{};
  });

  checks.emplace_back("identity-suite-order-24", [&] {
    const int N = 24;
    for (auto [q, ell] : {std::pair<long, long>{2, 3}, {2, 5}, {3, 7}, {4, 3}, {4, 5}, {5, 2}}) {
      auto params = FieldParams::make(q, ell);
      const auto& census = censuses.get(q, params.alpha * N);
      auto zeta = lf::verify_identity(lf::Identity::zeta_factorization, params, census, N);
      if (!zeta.ok)
        return "zeta factorization fails at (q,ell)=(" + std::to_string(q) + "," +
               std::to_string(ell) + ") index " + std::to_string(zeta.first_mismatch);
      auto lemma = lf::verify_identity(lf::Identity::lemma_f, params, census, N);
      if (!lemma.ok)
        return "f = zeta^w g fails at (q,ell)=(" + std::to_string(q) + "," +
               std::to_string(ell) + ") index " + std::to_string(lemma.first_mismatch);
    }
    auto cubic = lf::verify_identity(lf::Identity::cubic_ii, FieldParams::make(2, 3),
                                     censuses.get(2, 2 * N), N);
    if (!cubic.ok) return "cubic even-degree identity fails at index " +
                          std::to_string(cubic.first_mismatch);
    return std::string{};
  });

  checks.emplace_back("triple-oracle-counts", [&] {
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
      if (s.values != d.values || s.values != e.values)
        return "oracle disagreement at (p,ell)=(" + std::to_string(c.p) + "," +
               std::to_string(c.ell) + ")";
    }
    return std::string{};
  });

  checks.emplace_back("series-dp-deep-agreement", [&] {
    for (auto [q, ell] : {std::pair<long, long>{4, 3}, {4, 5}, {2, 3}}) {
      auto params = FieldParams::make(q, ell);
      const auto& census = censuses.get(q, params.alpha * 200);
      auto s = ct::exact_counts_series(params, census, 200);
      auto d = ct::exact_counts_dp(params, census, 200);
      if (s.values != d.values)
        return "series/dp mismatch at (q,ell)=(" + std::to_string(q) + "," +
               std::to_string(ell) + ")";
    }
    return std::string{};
  });

  checks.emplace_back("quadratic-closed-form", [&] {
    for (long q : {3L, 5L, 7L}) {
      auto params = FieldParams::make(q, 2);
      const auto& census = censuses.get(q, 100);
      auto t = ct::exact_counts_series(params, census, 100);
      if (t.a(1) != 2 * q) return "a_2(1) wrong at q=" + std::to_string(q);
      for (int n = 2; n <= 100; ++n) {
        BigInt expected =
            2 * (pow_bigint(BigInt(q), static_cast<unsigned>(n)) -
                 pow_bigint(BigInt(q), static_cast<unsigned>(n - 1)));
        if (t.a(n) != expected)
          return "quadratic closed form fails at q=" + std::to_string(q) +
                 " n=" + std::to_string(n);
      }
    }
    return std::string{};
  });

  checks.emplace_back("synthetic-tauberian-exactness", [&] {
    using Series = ps::TruncatedSeries<Rational>;
    for (long q : {2L, 3L, 5L}) {
      const int order = 30;
      Series geo(order, 1), dbl(order, 1);
      Rational p(1);
      for (int n = 0; n <= order; ++n) {
        geo[n] = p;
        dbl[n] = p * (n + 1);
        p *= q;
      }
      tb::PoleData p1{Rational(1, q), 1};
      tb::PoleData p2{Rational(1, q), 2};
      auto m1 = tb::model_from_series(geo, p1,
                                      tb::auto_envelope(tb::strip_pole(geo, p1), Rational(q)));
      auto m2 = tb::model_from_series(dbl, p2,
                                      tb::auto_envelope(tb::strip_pole(dbl, p2), Rational(q)));
      for (long n = 0; n <= order - 2; ++n) {
        if (tb::predict_coefficient(m1, n) != geo[static_cast<int>(n)])
          return "geometric residual nonzero at q=" + std::to_string(q);
        if (tb::predict_coefficient(m2, n) != dbl[static_cast<int>(n)])
          return "double-pole residual nonzero at q=" + std::to_string(q);
      }
      Series with_h = dbl;
      with_h[0] += 5;
      with_h[3] -= 2;
      auto mh = tb::model_from_series(
          with_h, p2, tb::auto_envelope(tb::strip_pole(with_h, p2), Rational(q)));
      if (mh.Q != m2.Q) return "polynomial part changed Q at q=" + std::to_string(q);
    }
    return std::string{};
  });

  checks.emplace_back("dual-route-r", [&] {
    for (auto [q, ell] : {std::pair<long, long>{2, 3}, {4, 3}, {3, 2}, {4, 5}}) {
      auto params = FieldParams::make(q, ell);
      const auto& census = censuses.get(q, params.alpha * 60);
      auto model = tb::build_field_model(params, census, 60, 40);
      Real rel = boost::multiprecision::abs(model.r_series.value - model.r_product) /
                 model.r_product;
      if (rel > Real(1e-6))
        return "r routes disagree at (q,ell)=(" + std::to_string(q) + "," +
               std::to_string(ell) + ")";
      if (q == 3 && ell == 2) {
        Real closed = to_real(Rational(2, 3)) / boost::multiprecision::log(Real(3));
        if (boost::multiprecision::abs(model.r_series.value - closed) > Real(1e-9) * closed)
          return detail::mismatch("closed-form r chain fails at (3,2)");
      }
    }
    return std::string{};
  });

  checks.emplace_back("character-multiplicity", [&] {
    for (long ell : {2L, 3L, 5L, 7L, 11L}) {
      for (int m = 1; m <= 5; ++m) {
        if (ct::character_multiplicity(m, ell) !=
            pow_bigint(BigInt(ell - 1), static_cast<unsigned>(m - 1)))
          return "character orbit count mismatch at ell=" + std::to_string(ell) +
                 " m=" + std::to_string(m);
      }
    }
    return std::string{};
  });

  checks.emplace_back("gamma-ratio-scaling", [&] {
    auto r1 = tb::gamma_ratio_check(0.5, 1000);
    auto r2 = tb::gamma_ratio_check(0.5, 2000);
    auto r4 = tb::gamma_ratio_check(0.5, 4000);
    double s1 = static_cast<double>(r2.residual / r1.residual);
    double s2 = static_cast<double>(r4.residual / r2.residual);
    if (s1 < 0.1875 || s1 > 0.3125 || s2 < 0.1875 || s2 > 0.3125)
      return detail::mismatch("gamma ratio residual does not scale like 1/n^2");
    return std::string{};
  });

  checks.emplace_back("keyhole-integral", [&] {
    for (long n : {50L, 100L, 200L}) {
      auto check = tb::keyhole_integral_check(Rational(1), 0.5, 0.5, 2, n);
      double allowed = 10.0 / (static_cast<double>(n) * n) + std::pow(2.0, -0.5 * n);
      if (static_cast<double>(check.relative_error) > allowed)
        return "keyhole error above tolerance at n=" + std::to_string(n);
    }
    return std::string{};
  });

  checks.emplace_back("central-binomial-demo", [&] {
    const long n = 10000;
    const double inv_sqrt_pi = 0.5641895835477563;
    double x = static_cast<double>(tb::scaled_pole_coefficient(Real(0.5), n));
    double raw = std::abs(x / inv_sqrt_pi - 1.0);
    double corrected = std::abs(x / (inv_sqrt_pi * (1 - 1.0 / (8.0 * n))) - 1.0);
    if (raw > 0.01) return detail::mismatch("raw central-binomial limit off by more than 1%");
    if (corrected > 0.0002)
      return detail::mismatch("corrected central-binomial limit off by more than 0.02%");
    return std::string{};
  });

  std::vector<CheckResult> results;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CheckResult r;
    r.index = static_cast<int>(i) + 1;
    r.name = checks[i].first;
    try {
      std::string err = checks[i].second();
      r.ok = err.empty();
      r.detail = err;
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = e.what();
    }
    if (progress) progress(r);
    results.push_back(std::move(r));
    if (!results.back().ok && stop_on_failure) break;
  }
  return results;
}

inline bool all_ok(const std::vector<CheckResult>& results, std::size_t expected_count = 16) {
  if (results.size() != expected_count) return false;
  for (const auto& r : results)
    if (!r.ok) return false;
  return true;
}

}  // namespace abelext::verify
