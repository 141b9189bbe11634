#pragma once

// Exact polynomial arithmetic over the rationals, plus the three classical
// orthogonal families.  Jacobi polynomials are built from the binomial sum
// rather than the three-term recurrence: the recurrence prefactors vanish
// for the negative rational parameters that show up in virtual-state
// constructions, while the explicit sum is valid for any parameters.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace swkblab {

using Rational = boost::multiprecision::cpp_rational;

class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(const Rational& constant) : c_{constant} { trim(); }
  RationalPoly(long constant) : c_{Rational(constant)} { trim(); }
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static RationalPoly x() {
    return RationalPoly(std::vector<Rational>{Rational(0), Rational(1)});
  }
  static RationalPoly monomial(int k, const Rational& coef = Rational(1)) {
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
    c.back() = coef;
    return RationalPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  Rational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(k)];
  }

  const std::vector<Rational>& coeffs() const { return c_; }

  RationalPoly derivative() const {
    if (c_.size() <= 1) return RationalPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      d[k - 1] = c_[k] * static_cast<long>(k);
    return RationalPoly(std::move(d));
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;)
      acc = acc * x + c_[k].convert_to<double>();
    return acc;
  }

  Rational eval_exact(const Rational& x) const {
    Rational acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  RationalPoly compose(const RationalPoly& inner) const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator-(const RationalPoly& a) {
    std::vector<Rational> c(a.c_);
    for (auto& v : c) v = -v;
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return RationalPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator*(const Rational& s, const RationalPoly& a) {
    if (s == 0) return RationalPoly();
    std::vector<Rational> c(a.c_);
    for (auto& v : c) v *= s;
    return RationalPoly(std::move(c));
  }
  friend RationalPoly operator*(const RationalPoly& a, const Rational& s) {
    return s * a;
  }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.c_ == b.c_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;  // ascending powers, trailing zeros trimmed
};

inline RationalPoly RationalPoly::compose(const RationalPoly& inner) const {
  RationalPoly acc;
  for (std::size_t k = c_.size(); k-- > 0;)
    acc = acc * inner + RationalPoly(c_[k]);
  return acc;
}

// q (q-1) ... (q-k+1) for rational q.
inline Rational rational_falling(const Rational& q, int k) {
  Rational r(1);
  for (int j = 0; j < k; ++j) r *= (q - j);
  return r;
}

inline Rational rational_factorial(int n) {
  Rational r(1);
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Generalized binomial coefficient C(q, k) for rational q, integer k >= 0.
inline Rational rational_binomial(const Rational& q, int k) {
  return rational_falling(q, k) / rational_factorial(k);
}

// Physicists' Hermite polynomial H_n.
inline RationalPoly hermite_poly(int n) {
  if (n < 0) throw std::invalid_argument("hermite_poly: n < 0");
  RationalPoly hm1(1);
  if (n == 0) return hm1;
  RationalPoly h = Rational(2) * RationalPoly::x();
  for (int k = 1; k < n; ++k) {
    RationalPoly next =
        Rational(2) * (RationalPoly::x() * h) - Rational(2 * k) * hm1;
    hm1 = std::move(h);
    h = std::move(next);
  }
  return h;
}

// Generalized Laguerre polynomial L_n^{(alpha)}.
inline RationalPoly laguerre_poly(int n, const Rational& alpha) {
  if (n < 0) throw std::invalid_argument("laguerre_poly: n < 0");
  RationalPoly lm1(1);
  if (n == 0) return lm1;
  RationalPoly l = RationalPoly(Rational(1) + alpha) - RationalPoly::x();
  for (int k = 1; k < n; ++k) {
    RationalPoly next =
        (Rational(1) / Rational(k + 1)) *
        ((RationalPoly(Rational(2 * k + 1) + alpha) - RationalPoly::x()) * l -
         (alpha + k) * lm1);
    lm1 = std::move(l);
    l = std::move(next);
  }
  return l;
}

// Jacobi polynomial P_n^{(a,b)} from the explicit binomial sum, valid for
// arbitrary rational parameters.
inline RationalPoly jacobi_poly(int n, const Rational& a, const Rational& b) {
  if (n < 0) throw std::invalid_argument("jacobi_poly: n < 0");
  const Rational half(1, 2);
  RationalPoly xm1 = half * (RationalPoly::x() - RationalPoly(1));
  RationalPoly xp1 = half * (RationalPoly::x() + RationalPoly(1));
  RationalPoly sum;
  for (int s = 0; s <= n; ++s) {
    Rational coef = rational_binomial(a + n, n - s) * rational_binomial(b + n, s);
    if (coef == 0) continue;
    RationalPoly term(coef);
    for (int j = 0; j < s; ++j) term = term * xm1;
    for (int j = 0; j < n - s; ++j) term = term * xp1;
    sum = sum + term;
  }
  return sum;
}

// Determinant of a small polynomial matrix by cofactor expansion.
inline RationalPoly poly_det(const std::vector<std::vector<RationalPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return RationalPoly(1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("poly_det: not square");
  if (n == 1) return m[0][0];
  RationalPoly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<RationalPoly>> minor(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      minor[r - 1].reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) minor[r - 1].push_back(m[r][c]);
    }
    RationalPoly cof = m[0][j] * poly_det(minor);
    det = (j % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

// Wronskian W[f_1, ..., f_n] = det[ f_j^{(i-1)} ].
inline RationalPoly poly_wronskian(const std::vector<RationalPoly>& fs) {
  const std::size_t n = fs.size();
  if (n == 0) return RationalPoly(1);
  std::vector<std::vector<RationalPoly>> m(n, std::vector<RationalPoly>(n));
  m[0] = fs;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = m[i - 1][j].derivative();
  return poly_det(m);
}

// Logarithmic derivative f'(x)/f(x) evaluated in doubles.
inline double poly_dlog(const RationalPoly& f, double x) {
  return f.derivative()(x) / f(x);
}

// Double-precision snapshot of a RationalPoly for hot evaluation paths;
// converting the big-rational coefficients once beats per-call conversion.
class DoublePoly {
 public:
  DoublePoly() : c_{0.0} {}
  explicit DoublePoly(const RationalPoly& p) {
    c_.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c_.push_back(q.convert_to<double>());
    if (c_.empty()) c_.push_back(0.0);
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }

  // Cauchy bound: all real roots lie inside |x| <= bound.
  double root_bound() const {
    double lead = c_.back();
    if (lead == 0.0) return 1.0;
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < c_.size(); ++k)
      m = std::max(m, std::abs(c_[k] / lead));
    return 1.0 + m;
  }

 private:
  std::vector<double> c_;
};

}  // namespace swkblab
