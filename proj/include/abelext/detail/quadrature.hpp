#pragma once

#include <stdexcept>

#include "abelext/numeric.hpp"

namespace abelext::tauberian::detail {

// Adaptive Simpson with Richardson acceptance, in high-precision reals.
template <class F>
Real adaptive_simpson_step(const F& f, const Real& a, const Real& b, const Real& fa,
                           const Real& fm, const Real& fb, const Real& whole, const Real& tol,
                           int depth) {
  const Real m = (a + b) / 2;
  const Real lm = (a + m) / 2;
  const Real rm = (m + b) / 2;
  const Real flm = f(lm);
  const Real frm = f(rm);
  const Real left = (m - a) / 6 * (fa + 4 * flm + fm);
  const Real right = (b - m) / 6 * (fm + 4 * frm + fb);
  const Real delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("quadrature failed to reach requested tolerance");
  if (boost::multiprecision::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class F>
Real adaptive_simpson(const F& f, const Real& a, const Real& b, const Real& tol,
                      int max_depth = 60) {
  const Real fa = f(a);
  const Real fb = f(b);
  const Real m = (a + b) / 2;
  const Real fm = f(m);
  const Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace abelext::tauberian::detail
