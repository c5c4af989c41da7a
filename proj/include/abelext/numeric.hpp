#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace abelext {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real     = boost::multiprecision::cpp_bin_float_50;

/// Raised when a computation would exceed a configured work ceiling.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Real to_real(const Rational& x) { return static_cast<Real>(x); }
inline Real to_real(const BigInt& x) { return static_cast<Real>(x); }

inline BigInt pow_bigint(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline Rational pow_rational(const Rational& base, int exp) {
  if (exp == 0) return Rational(1);
  Rational b = exp > 0 ? base : Rational(1) / base;
  unsigned e = static_cast<unsigned>(exp > 0 ? exp : -exp);
  Rational r(1);
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r(1);
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// Generalized binomial coefficient: exact for any integer n (negative included),
// via the falling-factorial product with stepwise exact division.
inline BigInt binomial(const BigInt& n, long k) {
  if (k < 0) return BigInt(0);
  BigInt r(1);
  for (long i = 1; i <= k; ++i) {
    r *= n - (i - 1);
    r /= i;  // C(n, i) is an integer at every step
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct PrimePower {
  long p;
  int k;
};

// Decomposes q = p^k with p prime; throws if q is not a prime power.
inline PrimePower prime_power_decompose(const BigInt& q) {
  if (q < 2) throw std::invalid_argument("prime power must be >= 2");
  if (q > BigInt(1) << 62) throw std::invalid_argument("prime power out of supported range");
  std::uint64_t n = q.convert_to<std::uint64_t>();
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {static_cast<long>(n), 1};  // q itself prime
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) throw std::invalid_argument("not a prime power");
  return {static_cast<long>(p), k};
}

inline bool is_prime_power(const BigInt& q) {
  try {
    prime_power_decompose(q);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

/// Reads a work-budget ceiling from the environment, falling back to a default.
inline std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0') throw std::invalid_argument(std::string("bad budget value in $") + name);
  return parsed;
}

namespace detail {

inline int decimal_digit_count(const BigInt& n) {
  if (n == 0) return 1;
  BigInt a = n < 0 ? BigInt(-n) : n;
  return static_cast<int>(a.str().size());
}

}  // namespace detail

// Rounded decimal rendering of an exact rational with `digits` significant
// digits, done entirely in integer arithmetic. Integers print exactly.
inline std::string decimal_string(const Rational& x, int digits = 30) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (num == 0) return "0";
  if (den == 1) return num.str();

  const bool neg = num < 0;
  const BigInt a = neg ? BigInt(-num) : num;
  // scale so the quotient carries `digits` significant digits
  int shift = digits - detail::decimal_digit_count(a) + detail::decimal_digit_count(den) + 1;
  BigInt scaled;
  if (shift >= 0)
    scaled = (a * pow_bigint(10, static_cast<unsigned>(shift)) + den / 2) / den;
  else
    scaled = (a + den * pow_bigint(10, static_cast<unsigned>(-shift)) / 2) /
             (den * pow_bigint(10, static_cast<unsigned>(-shift)));
  // exponent of the leading digit
  int exp10 = detail::decimal_digit_count(scaled) - 1 - shift;
  std::string ds = scaled.str();
  if (static_cast<int>(ds.size()) > digits) {
    // round away the guard digits
    BigInt r = (scaled + pow_bigint(10, static_cast<unsigned>(ds.size() - digits)) / 2) /
               pow_bigint(10, static_cast<unsigned>(ds.size() - digits));
    ds = r.str();
    if (static_cast<int>(ds.size()) > digits) {  // rounding produced an extra digit
      ds.resize(static_cast<std::size_t>(digits));
      ++exp10;
    }
  }
  while (ds.size() > 1 && ds.back() == '0') ds.pop_back();
  std::string out = neg ? "-" : "";
  out += ds.substr(0, 1);
  if (ds.size() > 1) out += "." + ds.substr(1);
  out += "e" + std::string(exp10 < 0 ? "-" : "+") + std::to_string(exp10 < 0 ? -exp10 : exp10);
  return out;
}

inline std::string decimal_string(const Real& x, int digits = 30) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

}  // namespace abelext
