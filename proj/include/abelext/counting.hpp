#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "abelext/fqcensus.hpp"
#include "abelext/lfunc.hpp"
#include "abelext/numeric.hpp"

namespace abelext::counting {

using fqcensus::FieldParams;
using fqcensus::FpPoly;
using fqcensus::PrimeCensus;

enum class Route { series, dp, enumerative };

inline const char* route_name(Route r) {
  switch (r) {
    case Route::series: return "series";
    case Route::dp: return "dp";
    case Route::enumerative: return "enumerative";
  }
  return "?";
}

// a_ell(1..max_n) for one parameter set, tagged with the route that produced it.
struct CountTable {
  FieldParams params;
  int max_n = 0;
  Route route = Route::series;
  std::vector<BigInt> values;  // values[n-1] = a_ell(n)

  const BigInt& a(long n) const {
    if (n < 1 || n > max_n) throw std::invalid_argument("count index out of range");
    return values[static_cast<std::size_t>(n) - 1];
  }
};

/// a_ell(n) = 2 b_{alpha n} / (ell - 1) from the Euler-product series.
inline CountTable exact_counts_series(const FieldParams& params, const PrimeCensus& census,
                                      int max_n) {
  CountTable t{params, max_n, Route::series, {}};
  auto f = lfunc::build_f_series(params, census, max_n);
  for (int n = 1; n <= max_n; ++n) {
    const Rational& b = f[n];
    if (boost::multiprecision::denominator(b) != 1)
      throw std::logic_error("series coefficient must be an integer");
    BigInt twice = 2 * boost::multiprecision::numerator(b);
    if (twice % (params.ell - 1) != 0)
      throw std::logic_error("2 b_{alpha n} must be divisible by ell - 1");
    t.values.push_back(twice / (params.ell - 1));
  }
  return t;
}

// Independent dynamic program: convolve, degree by degree, the choices of k
// distinct primes of degree alpha*j with weight C(N_q(alpha j), k) (ell-1)^k.
// Shares only the census with the series route.
inline CountTable exact_counts_dp(const FieldParams& params, const PrimeCensus& census,
                                  int max_n) {
  if (census.max_deg < params.alpha * max_n)
    throw std::invalid_argument("census too shallow for requested counts");
  CountTable t{params, max_n, Route::dp, {}};
  std::vector<BigInt> conv(static_cast<std::size_t>(max_n) + 1);
  conv[0] = 1;
  for (int j = 1; j <= max_n; ++j) {
    const BigInt& nj = census.count(params.alpha * j);
    std::vector<BigInt> layer{BigInt(1)};  // weight of choosing k primes of this degree
    BigInt choose(1);
    BigInt wpow(1);
    for (int k = 1; k * j <= max_n; ++k) {
      choose *= nj - (k - 1);
      choose /= k;
      wpow *= params.ell - 1;
      layer.push_back(choose * wpow);
    }
    std::vector<BigInt> next(conv.size());
    for (std::size_t m = 0; m < conv.size(); ++m) {
      if (conv[m] == 0) continue;
      for (std::size_t k = 0; k < layer.size() && m + k * static_cast<std::size_t>(j) < next.size();
           ++k)
        next[m + k * static_cast<std::size_t>(j)] += conv[m] * layer[k];
    }
    conv = std::move(next);
  }
  for (int n = 1; n <= max_n; ++n) {
    BigInt twice = 2 * conv[static_cast<std::size_t>(n)];
    if (twice % (params.ell - 1) != 0)
      throw std::logic_error("2 b_{alpha n} must be divisible by ell - 1");
    t.values.push_back(twice / (params.ell - 1));
  }
  return t;
}

// Work ceilings for the explicit conductor enumeration.
struct CountBudget {
  long max_p = 7;
  int max_total_deg = 8;
  std::uint64_t work = env_budget("ABELEXT_ENUM_BUDGET", 1'000'000);
};

// Degree multiset of a squarefree monic polynomial's prime factorization.
struct SquarefreeProfile {
  std::map<int, int> degree_multiset;  // degree -> number of distinct primes
  int m = 0;                           // total number of prime factors
};

/// Trial-division profile; nullopt when the polynomial is not squarefree.
inline std::optional<SquarefreeProfile> squarefree_profile(const FpPoly& f,
                                                           const PrimeCensus& census) {
  auto factors = fqcensus::factor_trial_division(f, census);
  SquarefreeProfile profile;
  for (const auto& [g, mult] : factors) {
    if (mult > 1) return std::nullopt;
    ++profile.degree_multiset[g.deg];
    ++profile.m;
  }
  return profile;
}

// Brute-force conductor census: enumerate every monic polynomial of degree
// alpha*n over F_p, keep the squarefree ones whose prime degrees are all
// divisible by alpha, and give each weight 2 (ell-1)^{m-1}.
inline CountTable exact_counts_enumerative(const FieldParams& params, const PrimeCensus& census,
                                           int max_n, const CountBudget& budget = {}) {
  if (params.k != 1) throw std::invalid_argument("enumerative route requires prime q");
  if (params.p > budget.max_p || params.alpha * max_n > budget.max_total_deg)
    throw std::invalid_argument("enumeration parameters beyond configured ceilings");
  const long p = params.p;
  std::uint64_t work = 0;
  for (int n = 1; n <= max_n; ++n)
    work += fqcensus::detail::pow_u64(static_cast<std::uint64_t>(p),
                                      static_cast<int>(params.alpha) * n);
  if (work > budget.work)
    throw budget_error("conductor enumeration exceeds work budget (" + std::to_string(work) +
                       " > " + std::to_string(budget.work) + ")");
  if (!census.has_lists(params.alpha * max_n / 2 > 0 ? params.alpha * max_n / 2 : 1))
    throw std::invalid_argument("census lists too shallow for enumerative route");

  CountTable t{params, max_n, Route::enumerative, {}};
  const long weight_base = params.ell - 1;
  for (int n = 1; n <= max_n; ++n) {
    const int deg = params.alpha * n;
    const std::uint64_t total = fqcensus::detail::pow_u64(static_cast<std::uint64_t>(p), deg);
    BigInt acc(0);
    for (std::uint64_t code = 0; code < total; ++code) {
      FpPoly f = fqcensus::detail::decode_monic(static_cast<std::uint8_t>(p), deg, code);
      int m = 0;
      bool keep = true;
      FpPoly rest = f;
      for (int e = 1; keep && rest.deg > 0 && 2 * e <= rest.deg; ++e) {
        for (const FpPoly& g : census.lists.at(e)) {
          if (2 * e > rest.deg) break;
          FpPoly quotient = FpPoly::zero(f.p);
          if (!fqcensus::detail::fp_divides(g, rest, &quotient)) continue;
          if (e % params.alpha != 0 || fqcensus::detail::fp_divides(g, quotient)) {
            keep = false;  // wrong ramified degree, or a square factor
            break;
          }
          rest = quotient;
          ++m;
        }
      }
      if (!keep) continue;
      if (rest.deg > 0) {
        if (rest.deg % params.alpha != 0) continue;
        ++m;  // leftover cofactor is irreducible
      }
      // weight 2 (ell-1)^{m-1}; m >= 1 since deg >= 1
      BigInt w(2);
      for (int i = 1; i < m; ++i) w *= weight_base;
      acc += w;
    }
    t.values.push_back(acc);
  }
  return t;
}

/// Orbit count of all-nonzero vectors in (Z/ell)^m under unit rescaling,
/// by explicit enumeration; asserted equal to the closed form (ell-1)^{m-1}.
inline BigInt character_multiplicity(int m, long ell, std::uint64_t budget = env_budget(
                                                          "ABELEXT_CHAR_BUDGET", 4'194'304)) {
  if (m < 1 || m > 12 || ell < 2 || ell > 13 ||
      !is_prime_u64(static_cast<std::uint64_t>(ell)))
    throw std::invalid_argument("character multiplicity parameters beyond ceilings");
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) {
    total *= static_cast<std::uint64_t>(ell - 1);
    if (total > budget) throw budget_error("character enumeration exceeds work budget");
  }
  std::unordered_set<std::uint64_t> orbits;
  std::vector<long> v(static_cast<std::size_t>(m), 1);
  // modular inverses of 1..ell-1
  std::vector<long> inv(static_cast<std::size_t>(ell), 0);
  for (long x = 1; x < ell; ++x)
    for (long y = 1; y < ell; ++y)
      if (x * y % ell == 1) inv[static_cast<std::size_t>(x)] = y;
  for (std::uint64_t it = 0; it < total; ++it) {
    const long scale = inv[static_cast<std::size_t>(v[0])];
    std::uint64_t key = 0;
    for (int i = 0; i < m; ++i)
      key = key * static_cast<std::uint64_t>(ell) +
            static_cast<std::uint64_t>(v[static_cast<std::size_t>(i)] * scale % ell);
    orbits.insert(key);
    for (int i = m - 1; i >= 0; --i) {  // odometer over {1..ell-1}^m
      if (++v[static_cast<std::size_t>(i)] < ell) break;
      v[static_cast<std::size_t>(i)] = 1;
    }
  }
  BigInt expected = pow_bigint(ell - 1, static_cast<unsigned>(m - 1));
  if (BigInt(orbits.size()) != expected)
    throw std::logic_error("orbit enumeration disagrees with closed form");
  return BigInt(orbits.size());
}

}  // namespace abelext::counting
