#pragma once

#include <cmath>

namespace embolic {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// x^n by repeated multiplication for small integer exponents. Used instead
/// of std::pow(x, double(n)) so that quantities like R0^n are the same exact
/// double everywhere they appear.
inline double powi(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

/// 5^e. Integer exponents in [0, 64] are evaluated by exact repeated
/// multiplication (exact in double through 5^22, deterministic beyond), so
/// closed-form cases like 5^n stay bit-exact; everything else goes through
/// std::pow.
inline double pow5(double e) {
  if (e >= 0.0 && e <= 64.0 && e == static_cast<double>(static_cast<int>(e))) {
    double r = 1.0;
    for (int i = 0; i < static_cast<int>(e); ++i) r *= 5.0;
    return r;
  }
  return std::pow(5.0, e);
}

/// Base-5 logarithm as a ratio of natural logarithms. All logarithms in the
/// bound formulas are natural unless the base-5 form is explicit; the
/// exp/5-power consistency identity is covered by tests rather than assumed.
inline double log5(double x) { return std::log(x) / std::log(5.0); }

}  // namespace embolic
