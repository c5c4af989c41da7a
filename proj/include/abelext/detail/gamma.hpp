#pragma once

#include <cmath>
#include <stdexcept>

namespace abelext::tauberian::detail {

// Lanczos approximation (g = 7, 9 terms), ~15 significant digits on the real
// line away from the poles. Negative arguments go through reflection.
inline double gamma_lanczos(double x) {
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x == std::floor(x) && x <= 0.0)
    throw std::invalid_argument("gamma pole at nonpositive integer");
  if (x < 0.5) {
    const double pi = 3.14159265358979323846;
    return pi / (std::sin(pi * x) * gamma_lanczos(1.0 - x));
  }
  const double z = x - 1.0;
  double a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + i);
  const double t = z + 7.5;
  const double sqrt_two_pi = 2.5066282746310005024;
  return sqrt_two_pi * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace abelext::tauberian::detail
