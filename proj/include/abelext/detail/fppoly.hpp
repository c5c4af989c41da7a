#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abelext/numeric.hpp"

namespace abelext::fqcensus {

// Monic (or general) polynomial over a small prime field F_p, little-endian
// coefficients. Sized for the enumeration ceilings (p <= 13, deg <= 10) plus
// the headroom products of two such factors need.
struct FpPoly {
  static constexpr int max_coeffs = 21;

  std::uint8_t p = 2;
  std::int8_t deg = -1;  // -1 encodes the zero polynomial
  std::array<std::uint8_t, max_coeffs> c{};

  static FpPoly zero(std::uint8_t p) { return FpPoly{p, -1, {}}; }

  static FpPoly constant(std::uint8_t p, std::uint8_t v) {
    FpPoly f{p, -1, {}};
    if (v % p != 0) {
      f.deg = 0;
      f.c[0] = static_cast<std::uint8_t>(v % p);
    }
    return f;
  }

  bool is_zero() const { return deg < 0; }
  bool is_monic() const { return deg >= 0 && c[deg] == 1; }

  std::vector<std::uint8_t> coefficients() const {
    return std::vector<std::uint8_t>(c.begin(), c.begin() + (deg + 1));
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = deg; i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (i == 0 || c[i] != 1) out += std::to_string(int(c[i]));
      if (i >= 1) out += "t";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

  friend bool operator==(const FpPoly&, const FpPoly&) = default;
};

// Deterministic ordering: by degree, then lexicographic on the coefficient
// tuple read from the highest power down (so t^3+t+1 precedes t^3+t^2+1).
inline bool lex_less(const FpPoly& a, const FpPoly& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  for (int i = a.deg; i >= 0; --i)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

namespace detail {

inline void fp_normalize(FpPoly& f) {
  while (f.deg >= 0 && f.c[f.deg] == 0) --f.deg;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p);
  if (a.deg + b.deg >= FpPoly::max_coeffs) throw std::logic_error("FpPoly product overflows capacity");
  FpPoly r{a.p, static_cast<std::int8_t>(a.deg + b.deg), {}};
  int acc[2 * FpPoly::max_coeffs] = {};
  for (int i = 0; i <= a.deg; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j <= b.deg; ++j) acc[i + j] += a.c[i] * b.c[j];
  }
  for (int k = 0; k <= r.deg; ++k) r.c[k] = static_cast<std::uint8_t>(acc[k] % a.p);
  fp_normalize(r);
  return r;
}

// Quotient of num by monic den; remainder left in rem.
inline FpPoly fp_divrem(const FpPoly& num, const FpPoly& den, FpPoly& rem) {
  if (den.is_zero() || !den.is_monic()) throw std::invalid_argument("divisor must be monic");
  rem = num;
  if (num.deg < den.deg) return FpPoly::zero(num.p);
  const int p = num.p;
  FpPoly q{num.p, static_cast<std::int8_t>(num.deg - den.deg), {}};
  for (int i = num.deg - den.deg; i >= 0; --i) {
    int lead = rem.deg >= 0 && i + den.deg <= rem.deg ? rem.c[i + den.deg] : 0;
    q.c[i] = static_cast<std::uint8_t>(lead);
    if (lead == 0) continue;
    for (int j = 0; j <= den.deg; ++j) {
      int v = rem.c[i + j] - lead * den.c[j];
      v %= p;
      if (v < 0) v += p;
      rem.c[i + j] = static_cast<std::uint8_t>(v);
    }
  }
  fp_normalize(rem);
  fp_normalize(q);
  return q;
}

inline bool fp_divides(const FpPoly& den, const FpPoly& num, FpPoly* quotient = nullptr) {
  FpPoly rem = FpPoly::zero(num.p);
  FpPoly q = fp_divrem(num, den, rem);
  if (!rem.is_zero()) return false;
  if (quotient) *quotient = q;
  return true;
}

inline FpPoly fp_derivative(const FpPoly& f) {
  FpPoly d{f.p, -1, {}};
  if (f.deg <= 0) return d;
  d.deg = static_cast<std::int8_t>(f.deg - 1);
  for (int i = 1; i <= f.deg; ++i) d.c[i - 1] = static_cast<std::uint8_t>((i * f.c[i]) % f.p);
  fp_normalize(d);
  return d;
}

inline std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Monic polynomials of fixed degree keyed by their low coefficients, c[i] in
// the p^i place.
inline std::uint64_t encode_monic(const FpPoly& f) {
  std::uint64_t code = 0;
  for (int i = f.deg - 1; i >= 0; --i) code = code * f.p + f.c[i];
  return code;
}

inline FpPoly decode_monic(std::uint8_t p, int deg, std::uint64_t code) {
  FpPoly f{p, static_cast<std::int8_t>(deg), {}};
  f.c[deg] = 1;
  for (int i = 0; i < deg; ++i) {
    f.c[i] = static_cast<std::uint8_t>(code % p);
    code /= p;
  }
  return f;
}

// Smallest-factor tables for all monic polynomials of degree 1..max_deg over
// F_p. A cell holds the packed (degree, code) of the first irreducible factor
// encountered scanning factor degrees upward (lex within a degree);
// kIrreducible marks the irreducibles themselves.
class FactorSieve {
 public:
  static constexpr std::uint32_t kIrreducible = 0xFFFFFFFFu;

  FactorSieve(long p, int max_deg, std::uint64_t work_budget) : p_(p), max_deg_(max_deg) {
    if (max_deg < 1) throw std::invalid_argument("sieve depth must be >= 1");
    std::uint64_t cells = 0;
    for (int d = 1; d <= max_deg; ++d) cells += pow_u64(static_cast<std::uint64_t>(p), d);
    if (cells > work_budget)
      throw budget_error("polynomial sieve over F_" + std::to_string(p) + " up to degree " +
                         std::to_string(max_deg) + " exceeds work budget (" + std::to_string(cells) +
                         " > " + std::to_string(work_budget) + ")");
    spf_.resize(static_cast<std::size_t>(max_deg) + 1);
    irr_.resize(static_cast<std::size_t>(max_deg) + 1);
    for (int d = 1; d <= max_deg; ++d)
      spf_[d].assign(pow_u64(static_cast<std::uint64_t>(p), d), kIrreducible);
    for (int d = 1; d <= max_deg; ++d) {
      mark_level(d);
      collect_level(d);
    }
  }

  long p() const { return p_; }
  int max_deg() const { return max_deg_; }

  const std::vector<FpPoly>& irreducibles(int d) const {
    if (d < 1 || d > max_deg_) throw std::invalid_argument("degree outside sieve range");
    return irr_[d];
  }

  bool is_irreducible(const FpPoly& f) const {
    if (f.deg < 1 || f.deg > max_deg_) throw std::invalid_argument("degree outside sieve range");
    if (!f.is_monic()) return false;
    return spf_[f.deg][encode_monic(f)] == kIrreducible;
  }

  // Full factorization of a monic polynomial, factors sorted by (degree, lex).
  std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f) const {
    if (!f.is_monic()) throw std::invalid_argument("factor() expects a monic polynomial");
    std::vector<FpPoly> parts;
    FpPoly rest = f;
    while (rest.deg > 0) {
      std::uint32_t cell = spf_[rest.deg][encode_monic(rest)];
      if (cell == kIrreducible) {
        parts.push_back(rest);
        break;
      }
      FpPoly g = unpack(cell);
      FpPoly quotient = FpPoly::zero(f.p);
      if (!fp_divides(g, rest, &quotient)) throw std::logic_error("sieve produced a non-divisor");
      parts.push_back(g);
      rest = quotient;
    }
    std::sort(parts.begin(), parts.end(), lex_less);
    std::vector<std::pair<FpPoly, int>> out;
    for (const auto& g : parts) {
      if (!out.empty() && out.back().first == g)
        ++out.back().second;
      else
        out.emplace_back(g, 1);
    }
    return out;
  }

 private:
  void mark_level(int d) {
    const auto p = static_cast<std::uint8_t>(p_);
    for (int e = 1; 2 * e <= d; ++e) {
      const std::uint64_t cof = pow_u64(static_cast<std::uint64_t>(p_), d - e);
      for (const FpPoly& g : irr_[e]) {
        const std::uint32_t packed = pack(g);
        for (std::uint64_t hc = 0; hc < cof; ++hc) {
          FpPoly h = decode_monic(p, d - e, hc);
          std::uint64_t prod = encode_monic(fp_mul(g, h));
          if (spf_[d][prod] == kIrreducible) spf_[d][prod] = packed;
        }
      }
    }
  }

  void collect_level(int d) {
    const auto p = static_cast<std::uint8_t>(p_);
    const std::uint64_t total = pow_u64(static_cast<std::uint64_t>(p_), d);
    for (std::uint64_t code = 0; code < total; ++code) {
      // ascending code is exactly the lex_less order within a degree
      if (spf_[d][code] == kIrreducible) irr_[d].push_back(decode_monic(p, d, code));
    }
  }

  std::uint32_t pack(const FpPoly& g) const {
    return (static_cast<std::uint32_t>(g.deg) << 26) | static_cast<std::uint32_t>(encode_monic(g));
  }

  FpPoly unpack(std::uint32_t cell) const {
    int deg = static_cast<int>(cell >> 26);
    return decode_monic(static_cast<std::uint8_t>(p_), deg, cell & ((1u << 26) - 1));
  }

  long p_;
  int max_deg_;
  std::vector<std::vector<std::uint32_t>> spf_;
  std::vector<std::vector<FpPoly>> irr_;
};

}  // namespace detail
}  // namespace abelext::fqcensus
