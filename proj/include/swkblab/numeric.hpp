#pragma once

// Shared numeric kernels: compensated summation, adaptive Gauss-Kronrod
// quadrature, bracketed root finding, and monotone piecewise-cubic
// interpolation.  Everything is pure and allocation-light; the heavier
// modules build on these primitives.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace swkblab {

// Thrown when an iterative scheme fails to reach its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// 15-point Kronrod / 7-point Gauss pair on [-1, 1].
inline constexpr double kGkNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kGkWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct GkEstimate {
  double value;
  double error;
};

template <typename F>
GkEstimate gauss_kronrod_15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(mid - half * kGkNodes[i]);
    fk[14 - i] = f(mid + half * kGkNodes[i]);
  }
  fk[7] = f(mid);
  double kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    double pair = (i == 7) ? fk[7] : fk[i] + fk[14 - i];
    kronrod += kGkWeights[i] * pair;
  }
  // Gauss points sit at the odd Kronrod indices 1,3,5 plus the centre.
  for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fk[1 + 2 * i] + fk[13 - 2 * i]);
  gauss += kGaussWeights[3] * fk[7];
  kronrod *= half;
  gauss *= half;
  double err = std::abs(kronrod - gauss);
  // Sharpen the raw difference the usual way (QUADPACK-style scaling).
  err = std::min(err, std::pow(200.0 * err, 1.5));
  return {kronrod, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b].
// Stops when the summed error estimate is below max(abs_tol, rel_tol*|I|).
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-10,
                 double rel_tol = 1e-10, int max_intervals = 20000) {
  if (a == b) return 0.0;
  struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  auto first = detail::gauss_kronrod_15(f, a, b);
  std::priority_queue<Piece> heap;
  heap.push({a, b, first.value, first.error});
  double total = first.value;
  double total_err = first.error;
  int used = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         used < max_intervals) {
    Piece worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      // Interval at machine resolution; accept its estimate as-is.
      total_err -= worst.error;
      continue;
    }
    auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++used;
  }
  if (total_err > std::max(abs_tol * 100.0, 100.0 * rel_tol * std::abs(total)))
    throw NonConvergenceError("integrate: adaptive quadrature stalled");
  return total;
}

// Bisection refined by inverse quadratic / secant steps (Brent's method).
// Requires f(lo) and f(hi) of opposite sign.
template <typename F>
double brent_root(const F& f, double lo, double hi, double xtol = 1e-13,
                  int max_iter = 200) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("brent_root: endpoints do not bracket a root");
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                 0.5 * xtol;
    double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = m; e = m;
    } else {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = m; e = m;
      }
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  return b;
}

// Expand a bracket upward from `lo` until f changes sign, then solve.
template <typename F>
double bracket_and_solve_up(const F& f, double lo, double step, double max_hi,
                            double xtol = 1e-13) {
  double a = lo, fa = f(a);
  if (fa == 0.0) return a;
  double b = lo + step;
  while (b <= max_hi) {
    double fb = f(b);
    if (fb == 0.0) return b;
    if ((fa > 0.0) != (fb > 0.0)) return brent_root(f, a, b, xtol);
    a = b; fa = fb;
    step *= 2.0;
    b += step;
  }
  throw NonConvergenceError("bracket_and_solve_up: no sign change found");
}

// Monotone piecewise-cubic interpolant (Fritsch-Carlson limited tangents).
// Knots must be strictly increasing in x.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
      : x_(std::move(xs)), y_(std::move(ys)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw std::invalid_argument("MonotoneCubic: need >= 2 matched knots");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x_[i] > x_[i - 1]))
        throw std::invalid_argument("MonotoneCubic: x must increase");
    m_.resize(n);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      m_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        m_[i] = m_[i + 1] = 0.0;
        continue;
      }
      double alpha = m_[i] / d[i], beta = m_[i + 1] / d[i];
      double sq = alpha * alpha + beta * beta;
      if (sq > 9.0) {
        double tau = 3.0 / std::sqrt(sq);
        m_[i] = tau * alpha * d[i];
        m_[i + 1] = tau * beta * d[i];
      }
    }
  }

  double operator()(double x) const { return eval(x, nullptr); }

  double derivative(double x) const {
    double dy = 0.0;
    eval(x, &dy);
    return dy;
  }

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  double eval(double x, double* dy) const {
    std::size_t i = locate(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    if (dy) {
      double g00 = (6 * t2 - 6 * t) / h, g10 = (3 * t2 - 4 * t + 1);
      double g01 = (6 * t - 6 * t2) / h, g11 = (3 * t2 - 2 * t);
      *dy = y_[i] * g00 + m_[i] * g10 + y_[i + 1] * g01 + m_[i + 1] * g11;
    }
    return y_[i] * h00 + m_[i] * h10 * h + y_[i + 1] * h01 + m_[i + 1] * h11 * h;
  }

  std::size_t locate(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
  }

  std::vector<double> x_, y_, m_;
};

// Uniform-grid cubic Hermite table for a function with known derivative
// samples; used to tabulate wavefunctions once and evaluate them cheaply.
class HermiteTable {
 public:
  HermiteTable() = default;
  HermiteTable(double x0, double dx, std::vector<double> f, std::vector<double> df)
      : x0_(x0), dx_(dx), f_(std::move(f)), df_(std::move(df)) {
    if (f_.size() != df_.size() || f_.size() < 2)
      throw std::invalid_argument("HermiteTable: mismatched samples");
  }

  bool covers(double x) const {
    return x >= x0_ && x <= x0_ + dx_ * static_cast<double>(f_.size() - 1);
  }

  double value(double x) const { return eval(x, nullptr); }
  double slope(double x) const {
    double d = 0.0;
    eval(x, &d);
    return d;
  }

  void scale(double s) {
    for (auto& v : f_) v *= s;
    for (auto& v : df_) v *= s;
  }

 private:
  double eval(double x, double* dy) const {
    double u = (x - x0_) / dx_;
    auto n = static_cast<std::ptrdiff_t>(f_.size());
    auto i = static_cast<std::ptrdiff_t>(std::floor(u));
    i = std::clamp<std::ptrdiff_t>(i, 0, n - 2);
    double t = u - static_cast<double>(i);
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    auto idx = static_cast<std::size_t>(i);
    if (dy) {
      // d/dx of the Hermite basis: the dx on the slope terms cancels
      // against the 1/dx from the chain rule.
      double g00 = (6 * t2 - 6 * t) / dx_, g10 = 3 * t2 - 4 * t + 1;
      double g01 = (6 * t - 6 * t2) / dx_, g11 = 3 * t2 - 2 * t;
      *dy = f_[idx] * g00 + df_[idx] * g10 + f_[idx + 1] * g01 + df_[idx + 1] * g11;
    }
    return f_[idx] * h00 + df_[idx] * h10 * dx_ + f_[idx + 1] * h01 +
           df_[idx + 1] * h11 * dx_;
  }

  double x0_ = 0.0, dx_ = 1.0;
  std::vector<double> f_, df_;
};

}  // namespace swkblab
