#pragma once

// The inverse SWKB problem: reconstruct a superpotential from a prescribed
// bound-state spectrum.  Differentiating the quantization condition in the
// energy and resolving the resulting Abel integral equation gives
//
//   x_+(W^2) - x_-(W^2) = 2 hbar * Int_0^{W^2} (dE/dn)^{-1} / sqrt(W^2 - E) dE,
//
// so the spectrum fixes only the *gap* between the two turning-point branches
// of W^2.  A shape ansatz x_- = f(x_+) closes the system; solving
// x_+ - f(x_+) = gap for each W^2 yields both branches, and a sign convention
// (W < 0 left of its zero, > 0 right of it) recovers W itself.
//
// The same machinery answers the classical question of reconstructing a
// potential from its period of oscillation; classical_period_inverse is that
// desk-scale twin for a constant (isochronous) period.

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swkblab/catalog.hpp"
#include "swkblab/numeric.hpp"

namespace swkblab {

// A spectrum E(n) on continuous n >= 0 with E(0) = 0 and dE/dn > 0.  Linear
// and quadratic kinds carry exact closed forms through the Abel integral;
// tabulated levels are interpolated monotone-cubically in n (the inverse
// formula needs E at non-integer n) and integrated numerically.
class SpectrumSpec {
 public:
  enum class Kind { Linear, Quadratic, Tabulated };

  // E(n) = c n.
  static SpectrumSpec linear(double c) {
    detail::require(c > 0.0, "spectrum: linear coefficient must be positive");
    SpectrumSpec s;
    s.kind_ = Kind::Linear;
    s.c1_ = c;
    return s;
  }

  // E(n) = c1 n + c2 n^2.  c2 may be negative (saturating spectra) as long as
  // dE/dn stays positive over the range actually queried.
  static SpectrumSpec quadratic(double c1, double c2) {
    detail::require(c1 > 0.0 || (c1 == 0.0 && c2 > 0.0),
                    "spectrum: dE/dn must be positive near n = 0");
    SpectrumSpec s;
    s.kind_ = Kind::Quadratic;
    s.c1_ = c1;
    s.c2_ = c2;
    return s;
  }

  // Levels at n = 0, 1, ..., N; must start at 0 and increase strictly.
  static SpectrumSpec tabulated(std::vector<double> levels) {
    detail::require(levels.size() >= 2, "spectrum: need at least two levels");
    detail::require(levels.front() == 0.0,
                    "spectrum: tabulated levels must start at E(0) = 0");
    for (std::size_t i = 1; i < levels.size(); ++i)
      detail::require(levels[i] > levels[i - 1],
                      "spectrum: tabulated levels must increase strictly");
    SpectrumSpec s;
    s.kind_ = Kind::Tabulated;
    s.n_top_ = static_cast<double>(levels.size() - 1);
    std::vector<double> ns(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
      ns[i] = static_cast<double>(i);
    s.interp_ = std::make_shared<MonotoneCubic>(std::move(ns),
                                                std::move(levels));
    return s;
  }

  Kind kind() const { return kind_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }

  double E(double n) const {
    switch (kind_) {
      case Kind::Linear:
        return c1_ * n;
      case Kind::Quadratic:
        return c1_ * n + c2_ * n * n;
      case Kind::Tabulated:
        if (n > n_top_)  // extend past the table with the end slope
          return (*interp_)(n_top_) +
                 interp_->derivative(n_top_) * (n - n_top_);
        return (*interp_)(n);
    }
    return 0.0;
  }

  double dEdn(double n) const {
    switch (kind_) {
      case Kind::Linear:
        return c1_;
      case Kind::Quadratic:
        return c1_ + 2.0 * c2_ * n;
      case Kind::Tabulated:
        return interp_->derivative(std::min(n, n_top_));
    }
    return 0.0;
  }

  // Inverse of the monotone map n -> E(n).
  double n_of_E(double E) const {
    detail::require(E >= 0.0, "spectrum: energies are non-negative");
    if (E == 0.0) return 0.0;
    switch (kind_) {
      case Kind::Linear:
        return E / c1_;
      case Kind::Quadratic: {
        if (c2_ == 0.0) return E / c1_;
        double disc = c1_ * c1_ + 4.0 * c2_ * E;
        if (disc <= 0.0)
          throw std::domain_error("spectrum: level equation has no solution");
        return 2.0 * E / (c1_ + std::sqrt(disc));
      }
      case Kind::Tabulated: {
        double top = this->E(n_top_);
        if (E >= top)
          return n_top_ + (E - top) / interp_->derivative(n_top_);
        return brent_root([&](double n) { return this->E(n) - E; }, 0.0,
                          n_top_);
      }
    }
    return 0.0;
  }

 private:
  Kind kind_ = Kind::Linear;
  double c1_ = 1.0, c2_ = 0.0;
  double n_top_ = 0.0;
  std::shared_ptr<const MonotoneCubic> interp_;
};

// Relation x_- = f(x_+) between the turning-point branches.  Each kind also
// knows where W vanishes and how to invert x_+ - f(x_+) = gap.
class ShapeAnsatz {
 public:
  enum class Kind { Mirror, GammaMirror, Product, TanProduct };

  // x_- = -x_+ (symmetric well).
  static ShapeAnsatz mirror() { return ShapeAnsatz(Kind::Mirror, 1.0); }

  // x_+ = -gamma x_-, 0 < gamma <= 1: the right branch hugs the zero, so the
  // right side of the well is steeper.
  static ShapeAnsatz gamma_mirror(double gamma) {
    detail::require(gamma > 0.0 && gamma <= 1.0,
                    "ansatz: gamma must lie in (0, 1]");
    return ShapeAnsatz(Kind::GammaMirror, gamma);
  }

  // x_- x_+ = x0^2 with both branches positive (radial wells).
  static ShapeAnsatz product(double x0) {
    detail::require(x0 > 0.0, "ansatz: x0 must be positive");
    return ShapeAnsatz(Kind::Product, x0);
  }

  // tan x_- tan x_+ = tan^2 x0 on (0, pi/2) (trigonometric wells).
  static ShapeAnsatz tan_product(double x0) {
    detail::require(x0 > 0.0 && x0 < M_PI / 2,
                    "ansatz: x0 must lie in (0, pi/2)");
    return ShapeAnsatz(Kind::TanProduct, x0);
  }

  Kind kind() const { return kind_; }
  double gamma() const { return param_; }
  double x0() const { return param_; }

  // Location of the zero of W (the bottom of W^2).
  double zero() const {
    return (kind_ == Kind::Product || kind_ == Kind::TanProduct) ? param_
                                                                 : 0.0;
  }

  // Domain of the reconstructed superpotential.
  double x_min() const {
    switch (kind_) {
      case Kind::Product:
      case Kind::TanProduct:
        return 0.0;
      default:
        return -std::numeric_limits<double>::infinity();
    }
  }
  double x_max() const {
    return kind_ == Kind::TanProduct
               ? M_PI / 2
               : std::numeric_limits<double>::infinity();
  }

  // x_- as a function of x_+.
  double f(double x_plus) const {
    switch (kind_) {
      case Kind::Mirror:
        return -x_plus;
      case Kind::GammaMirror:
        return -x_plus / param_;
      case Kind::Product:
        return param_ * param_ / x_plus;
      case Kind::TanProduct:
        return std::atan(std::tan(param_) * std::tan(param_) /
                         std::tan(x_plus));
    }
    return 0.0;
  }

  // Solve x_+ - f(x_+) = gap for the right branch (gap >= 0).
  double solve_x_plus(double gap) const {
    detail::require(gap >= 0.0, "ansatz: branch gap must be non-negative");
    if (gap == 0.0) return zero();
    switch (kind_) {
      case Kind::Mirror:
        return 0.5 * gap;
      case Kind::GammaMirror:
        return param_ * gap / (1.0 + param_);
      case Kind::Product:
        return 0.5 * (gap + std::hypot(gap, 2.0 * param_));
      case Kind::TanProduct: {
        // x_+ - f(x_+) grows from 0 at x_+ = x0 towards pi/2 at the domain
        // edge, so gaps that large are unreachable under this ansatz.
        if (gap >= M_PI / 2)
          throw std::domain_error(
              "ansatz: gap exceeds pi/2, no tan-product solution");
        auto width = [&](double xp) { return xp - f(xp) - gap; };
        double hi = M_PI / 2 - 1e-3;
        while (width(hi) < 0.0) hi = M_PI / 2 - (M_PI / 2 - hi) * 1e-3;
        return brent_root(width, param_, hi, 1e-15);
      }
    }
    return 0.0;
  }

 private:
  ShapeAnsatz(Kind k, double p) : kind_(k), param_(p) {}

  Kind kind_;
  double param_;
};

// Right-hand side of the Abel relation: the turning-point gap
//   2 hbar * Int_0^{W^2} (dE/dn)^{-1} / sqrt(W^2 - E) dE
// as a function of W^2.  Linear and quadratic spectra go through closed
// forms; tabulated ones are integrated with the substitution E = W^2 sin^2(p)
// that removes the endpoint singularity.
inline double abel_rhs(const SpectrumSpec& spec, double Wsq,
                       double hbar = 1.0) {
  detail::require(Wsq >= 0.0, "abel_rhs: W^2 must be non-negative");
  detail::require(hbar > 0.0, "abel_rhs: hbar must be positive");
  if (Wsq == 0.0) return 0.0;
  const double w = std::sqrt(Wsq);
  switch (spec.kind()) {
    case SpectrumSpec::Kind::Linear:
      return 4.0 * hbar * w / spec.c1();
    case SpectrumSpec::Kind::Quadratic: {
      const double c1 = spec.c1(), c2 = spec.c2();
      if (c2 == 0.0) return 4.0 * hbar * w / c1;
      if (c2 > 0.0) {
        double root = std::sqrt(c1 * c1 + 4.0 * c2 * Wsq);
        return 2.0 * hbar / std::sqrt(c2) *
               std::asin(2.0 * std::sqrt(c2) * w / root);
      }
      // c2 < 0: dE/dn must stay positive up to E = W^2.
      double rest = c1 * c1 + 4.0 * c2 * Wsq;
      if (rest <= 0.0)
        throw std::domain_error(
            "abel_rhs: spectrum derivative vanishes below W^2");
      return 2.0 * hbar / std::sqrt(-c2) *
             std::asinh(2.0 * std::sqrt(-c2) * w / std::sqrt(rest));
    }
    case SpectrumSpec::Kind::Tabulated: {
      auto integrand = [&](double p) {
        double E = Wsq * std::sin(p) * std::sin(p);
        double slope = spec.dEdn(spec.n_of_E(E));
        if (!(slope > 0.0))
          throw std::domain_error(
              "abel_rhs: spectrum derivative vanishes below W^2");
        return std::sin(p) / slope;
      };
      return 4.0 * hbar * w * integrate(integrand, 0.0, M_PI / 2, 1e-12, 1e-12);
    }
  }
  return 0.0;
}

// Both turning-point branches sampled on a grid of W^2 values (or, for the
// classical twin, potential values): level[i] carries |W| (resp. U).
struct SampledBranches {
  std::vector<double> level;
  std::vector<double> x_minus;
  std::vector<double> x_plus;
};

inline SampledBranches reconstruct(const SpectrumSpec& spec,
                                   const ShapeAnsatz& ansatz,
                                   const std::vector<double>& Wsq_grid,
                                   double hbar = 1.0) {
  detail::require(!Wsq_grid.empty(), "reconstruct: empty grid");
  for (std::size_t i = 0; i < Wsq_grid.size(); ++i) {
    detail::require(Wsq_grid[i] > 0.0, "reconstruct: grid must be positive");
    if (i > 0)
      detail::require(Wsq_grid[i] > Wsq_grid[i - 1],
                      "reconstruct: grid must increase");
  }
  SampledBranches out;
  out.level.reserve(Wsq_grid.size());
  out.x_minus.reserve(Wsq_grid.size());
  out.x_plus.reserve(Wsq_grid.size());
  for (double Wsq : Wsq_grid) {
    double xp = ansatz.solve_x_plus(abel_rhs(spec, Wsq, hbar));
    out.level.push_back(std::sqrt(Wsq));
    out.x_plus.push_back(xp);
    out.x_minus.push_back(ansatz.f(xp));
  }
  return out;
}

// Classical analogue (mass 1/2): a particle oscillating with constant period
// T in a single-minimum potential obeys
//   x_+(U) - x_-(U) = (1/pi) * Int_0^U T dE / sqrt(U - E) = 2 T sqrt(U) / pi,
// so every ansatz yields an isochronous potential; the symmetric one is
// U(x) = (pi/T)^2 x^2.  level[i] carries U.
inline SampledBranches classical_period_inverse(
    double T, const std::vector<double>& U_grid,
    const ShapeAnsatz& ansatz = ShapeAnsatz::mirror()) {
  detail::require(T > 0.0, "classical inverse: period must be positive");
  detail::require(!U_grid.empty(), "classical inverse: empty grid");
  SampledBranches out;
  out.level.reserve(U_grid.size());
  out.x_minus.reserve(U_grid.size());
  out.x_plus.reserve(U_grid.size());
  for (double U : U_grid) {
    detail::require(U > 0.0, "classical inverse: grid must be positive");
    double xp = ansatz.solve_x_plus(2.0 * T * std::sqrt(U) / M_PI);
    out.level.push_back(U);
    out.x_plus.push_back(xp);
    out.x_minus.push_back(ansatz.f(xp));
  }
  return out;
}

// Assemble a full superpotential from the inverse problem: W is evaluated
// pointwise by inverting the appropriate branch map (monotone in |W|), with
// W < 0 left of its zero and W > 0 right of it so the ground state
// exp(-Int W/hbar) is normalizable.  The derivative is a five-point stencil;
// the spectrum field replays the prescribed E(n).
inline SuperpotentialSpec reconstructed_superpotential(
    const SpectrumSpec& spec, const ShapeAnsatz& ansatz, double hbar = 1.0,
    std::string name = "reconstructed") {
  detail::require(hbar > 0.0, "reconstructed_superpotential: hbar > 0");
  SuperpotentialSpec s;
  s.name = std::move(name);
  s.hbar = hbar;
  s.params["hbar"] = hbar;
  s.x_min = ansatz.x_min();
  s.x_max = ansatz.x_max();
  const double x0 = ansatz.zero();

  auto x_plus_of = [spec, ansatz, hbar](double w) {
    return ansatz.solve_x_plus(abel_rhs(spec, w * w, hbar));
  };
  auto x_minus_of = [spec, ansatz, hbar](double w) {
    return ansatz.f(ansatz.solve_x_plus(abel_rhs(spec, w * w, hbar)));
  };

  s.W = [x_plus_of, x_minus_of, x0](double x) {
    if (x == x0) return 0.0;
    if (x > x0) {
      // x_+(w) increases from x0; expand a bracket upward in w.
      return bracket_and_solve_up(
          [&](double w) { return x_plus_of(w) - x; }, 0.0, 0.5, 1e12, 1e-14);
    }
    // x_-(w) decreases from x0, so x - x_-(w) changes sign once.
    double w = bracket_and_solve_up(
        [&](double v) { return x - x_minus_of(v); }, 0.0, 0.5, 1e12, 1e-14);
    return -w;
  };
  auto W = s.W;
  const double lo = s.x_min, hi = s.x_max;
  s.Wprime = [W, lo, hi](double x) {
    double h = 1e-5 * (1.0 + std::abs(x));
    for (int k = 0; k < 60 && (x - 2 * h <= lo || x + 2 * h >= hi); ++k)
      h *= 0.5;
    return (8.0 * (W(x + h) - W(x - h)) - (W(x + 2 * h) - W(x - 2 * h))) /
           (12.0 * h);
  };
  s.spectrum = [spec](int n) { return spec.E(n); };
  return s;
}

}  // namespace swkblab
