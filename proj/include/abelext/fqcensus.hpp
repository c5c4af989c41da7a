#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelext/detail/fppoly.hpp"
#include "abelext/numeric.hpp"

namespace abelext::fqcensus {

/// Mobius function by squarefree-sign definition.
inline int mobius(long n) {
  if (n < 1) throw std::invalid_argument("mobius requires n >= 1");
  int sign = 1;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// Number of monic irreducible polynomials of degree d over F_q
/// (necklace formula N_q(d) = (1/d) sum_{e|d} mu(e) q^{d/e}).
inline BigInt count_irreducibles(const BigInt& q, int d) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  if (!is_prime_power(q)) throw std::invalid_argument("q must be a prime power");
  BigInt sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    sum += mobius(e) * pow_bigint(q, static_cast<unsigned>(d / e));
  }
  if (sum % d != 0) throw std::logic_error("necklace sum not divisible by degree");
  return sum / d;
}

/// Order of q in (Z/ell)^*.
inline int multiplicative_order(const BigInt& q, long ell) {
  if (ell < 2) throw std::invalid_argument("modulus must be >= 2");
  BigInt r = q % ell;
  if (r == 0) throw std::invalid_argument("ell divides q");
  BigInt acc = r;
  for (int k = 1; k < ell; ++k) {
    if (acc == 1) return k;
    acc = acc * r % ell;
  }
  throw std::invalid_argument("q is not a unit modulo ell");
}

// Parameters of one counting problem: base field size q = p^k, a prime ell
// not dividing q, alpha the order of q mod ell, and w = (ell-1)/alpha.
struct FieldParams {
  BigInt q;
  long p = 0;
  int k = 0;
  long ell = 0;
  int alpha = 0;
  int w = 0;

  static FieldParams make(const BigInt& q, long ell) {
    PrimePower pp = prime_power_decompose(q);
    if (!is_prime_u64(static_cast<std::uint64_t>(ell)))
      throw std::invalid_argument("ell must be prime");
    if (q % ell == 0) throw std::invalid_argument("ell must not divide q");
    FieldParams fp;
    fp.q = q;
    fp.p = pp.p;
    fp.k = pp.k;
    fp.ell = ell;
    fp.alpha = multiplicative_order(q, ell);
    if ((ell - 1) % fp.alpha != 0) throw std::logic_error("alpha must divide ell - 1");
    fp.w = static_cast<int>((ell - 1) / fp.alpha);
    return fp;
  }
};

// Ceilings for explicit polynomial enumeration. `work_budget` caps the total
// number of sieve cells; ABELEXT_SIEVE_BUDGET overrides the default.
struct EnumOptions {
  long max_p = 13;
  int max_deg = 10;
  std::uint64_t work_budget = env_budget("ABELEXT_SIEVE_BUDGET", 8'000'000);
};

/// All monic irreducibles of degree d over F_p, in coefficient-vector lex order.
inline std::vector<FpPoly> enumerate_irreducibles(long p, int d, const EnumOptions& opts = {}) {
  if (!is_prime_u64(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("enumeration requires prime p");
  if (p > opts.max_p || d > opts.max_deg || d < 1)
    throw std::invalid_argument("enumeration parameters beyond configured ceilings");
  detail::FactorSieve sieve(p, d, opts.work_budget);
  return sieve.irreducibles(d);
}

// Prime-degree census for F_q[t]: counts N_q(d) for d <= max_deg, plus
// explicit irreducible lists when q is prime and lists were attached.
struct PrimeCensus {
  BigInt q;
  int max_deg = 0;
  std::vector<BigInt> counts;               // counts[d-1] = N_q(d)
  std::map<int, std::vector<FpPoly>> lists; // present only for prime q

  static PrimeCensus make(const BigInt& q, int max_deg) {
    if (max_deg < 1) throw std::invalid_argument("census depth must be >= 1");
    PrimeCensus c;
    c.q = q;
    c.max_deg = max_deg;
    c.counts.reserve(static_cast<std::size_t>(max_deg));
    for (int d = 1; d <= max_deg; ++d) c.counts.push_back(count_irreducibles(q, d));
    return c;
  }

  const BigInt& count(int d) const {
    if (d < 1 || d > max_deg)
      throw std::invalid_argument("census too shallow: degree " + std::to_string(d) +
                                  " beyond depth " + std::to_string(max_deg));
    return counts[static_cast<std::size_t>(d) - 1];
  }

  void attach_lists(int up_to, const EnumOptions& opts = {}) {
    PrimePower pp = prime_power_decompose(q);
    if (pp.k != 1) throw std::invalid_argument("explicit lists require prime q");
    if (up_to > max_deg) throw std::invalid_argument("list depth exceeds census depth");
    detail::FactorSieve sieve(pp.p, up_to, opts.work_budget);
    for (int d = 1; d <= up_to; ++d) lists[d] = sieve.irreducibles(d);
  }

  bool has_lists(int up_to) const {
    for (int d = 1; d <= up_to; ++d)
      if (!lists.count(d)) return false;
    return true;
  }
};

// Trial-division factorization against explicit irreducible lists; the
// quadratic reference used to cross-check the sieve and to verify census
// lists. Requires lists up to deg(f)/2.
inline std::vector<std::pair<FpPoly, int>> factor_trial_division(const FpPoly& f,
                                                                 const PrimeCensus& census) {
  if (!f.is_monic()) throw std::invalid_argument("trial division expects a monic polynomial");
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly rest = f;
  for (int e = 1; rest.deg > 0 && 2 * e <= rest.deg; ++e) {
    auto it = census.lists.find(e);
    if (it == census.lists.end())
      throw std::invalid_argument("census lists too shallow for trial division");
    for (const FpPoly& g : it->second) {
      if (2 * e > rest.deg) break;
      int mult = 0;
      FpPoly quotient = FpPoly::zero(f.p);
      while (detail::fp_divides(g, rest, &quotient)) {
        rest = quotient;
        ++mult;
      }
      if (mult > 0) out.emplace_back(g, mult);
    }
  }
  if (rest.deg > 0) out.emplace_back(rest, 1);  // leftover cofactor is irreducible
  return out;
}

inline bool is_irreducible_trial_division(const FpPoly& f, const PrimeCensus& census) {
  if (f.deg < 1) return false;
  auto factors = factor_trial_division(f, census);
  return factors.size() == 1 && factors[0].second == 1;
}

}  // namespace abelext::fqcensus
