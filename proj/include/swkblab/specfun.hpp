#pragma once

// Gamma-function helpers and a confluent hypergeometric evaluator tuned for
// the parameter ranges this library actually visits: real arguments, half-
// integer second parameter, and |z| up to a few hundred.

#include <math.h>  // lgamma_r

#include <cmath>
#include <stdexcept>
#include <string>

#include "swkblab/numeric.hpp"

namespace swkblab {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// log|Gamma(x)|; sign of Gamma(x) through sign_out when non-null.
// Poles (x = 0, -1, -2, ...) are rejected rather than returned as inf.
inline double log_gamma(double x, int* sign_out = nullptr) {
  if (is_nonpositive_integer(x))
    throw std::domain_error("log_gamma: pole at non-positive integer " +
                            std::to_string(x));
  int sign = 0;
  double lg = ::lgamma_r(x, &sign);
  if (sign_out) *sign_out = sign;
  return lg;
}

// 1/Gamma(x), entire in x: exactly zero at the poles of Gamma.
inline double recip_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  int sign = 0;
  double lg = ::lgamma_r(x, &sign);
  if (lg > 700.0) return 0.0;  // Gamma overflows; reciprocal underflows.
  return static_cast<double>(sign) * std::exp(-lg);
}

struct KummerParams {
  double a;
  double c;
  double z;
};

namespace detail {

// Maclaurin series for M(a;c;z), z >= 0.  Terms carry at most the growth of
// the answer itself (which scales like e^z for large z), so compensated
// summation keeps this accurate across the whole non-negative axis.
inline double kummer_series(double a, double c, double z, int max_terms = 4000) {
  KahanSum s;
  s.add(1.0);
  double term = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + k) * z / ((c + k) * (k + 1));
    s.add(term);
    if (std::abs(term) <= 1e-17 * std::abs(s.sum) && k > z) return s.sum;
  }
  throw NonConvergenceError("kummer_series: no convergence");
}

// Finite sum when a is a non-positive integer (the series terminates).
inline double kummer_terminating(double a, double c, double z) {
  int m = static_cast<int>(-a);
  KahanSum s;
  s.add(1.0);
  double term = 1.0;
  for (int k = 0; k < m; ++k) {
    term *= (a + k) * z / ((c + k) * (k + 1));
    s.add(term);
  }
  return s.sum;
}

// Large-z asymptotic expansion for z > 0.  Returns false when the divergent
// tails cannot reach the requested accuracy (small z or large |a|), in which
// case the caller falls back to the Maclaurin series.
inline bool kummer_asymptotic(double a, double c, double z, double* out) {
  const double tol = 1e-13;
  // Dominant branch: Gamma(c)/Gamma(a) * e^z z^{a-c} * S1.
  double s1 = 1.0, term = 1.0, best_rel = 1.0;
  for (int k = 0; k < 60; ++k) {
    double next = term * (c - a + k) * (1.0 - a + k) / ((k + 1) * z);
    if (std::abs(next) >= std::abs(term)) break;  // divergence sets in
    term = next;
    s1 += term;
    best_rel = std::abs(term) / std::max(1.0, std::abs(s1));
    if (best_rel < tol) break;
  }
  if (best_rel >= 1e-11) return false;
  // Recessive branch: Gamma(c)/Gamma(c-a) * cos(pi a) z^{-a} * S2.
  double s2 = 1.0;
  term = 1.0;
  double rel2 = 1.0;
  for (int k = 0; k < 60; ++k) {
    double next = -term * (a + k) * (a - c + 1.0 + k) / ((k + 1) * z);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    s2 += term;
    rel2 = std::abs(term) / std::max(1.0, std::abs(s2));
    if (rel2 < tol) break;
  }
  int sign_c = 0;
  double lg_c = log_gamma(c, &sign_c);
  double rg_a = recip_gamma(a);
  double rg_ca = recip_gamma(c - a);
  double dominant = 0.0;
  if (rg_a != 0.0)
    dominant = sign_c * rg_a *
               std::exp(lg_c + z + (a - c) * std::log(z)) * s1;
  double recessive = 0.0;
  if (rg_ca != 0.0) {
    if (rel2 >= 1e-11 && dominant == 0.0) return false;
    recessive = sign_c * rg_ca * std::cos(M_PI * a) *
                std::exp(lg_c - a * std::log(z)) * s2;
  }
  *out = dominant + recessive;
  return true;
}

}  // namespace detail

// Kummer's confluent hypergeometric function M(a;c;z) for real arguments.
inline double kummer_1f1(const KummerParams& p) {
  double a = p.a, c = p.c, z = p.z;
  if (is_nonpositive_integer(c)) {
    // Only defined when the numerator terminates first.
    if (!(is_nonpositive_integer(a) && a > c))
      throw std::invalid_argument("kummer_1f1: c at a non-positive integer");
  }
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a)) return detail::kummer_terminating(a, c, z);
  if (z < 0.0) {
    // Kummer transformation maps to the stable non-negative axis.
    return std::exp(z) * kummer_1f1({c - a, c, -z});
  }
  if (z > 40.0) {
    double v = 0.0;
    if (detail::kummer_asymptotic(a, c, z, &v)) return v;
  }
  return detail::kummer_series(a, c, z);
}

inline double kummer_1f1(double a, double c, double z) {
  return kummer_1f1({a, c, z});
}

// d/dz M(a;c;z) = (a/c) M(a+1;c+1;z).
inline double kummer_1f1_dz(const KummerParams& p) {
  return (p.a / p.c) * kummer_1f1({p.a + 1.0, p.c + 1.0, p.z});
}

inline double kummer_1f1_dz(double a, double c, double z) {
  return kummer_1f1_dz({a, c, z});
}

}  // namespace swkblab
