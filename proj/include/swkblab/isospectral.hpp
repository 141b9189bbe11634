#pragma once

// Darboux-Crum and Krein-Adler deformations of the piecewise-quadratic
// eigensystems, including the family of potentials strictly isospectral to
// the harmonic oscillator obtained by deleting every negative-energy level
// of a step system.
//
// Deleting a set D of bound states {psi_d} from a Hamiltonian H = -d2/dx2 + V
// produces the deformed potential
//
//     V_D(x) = V(x) - 2 (d2/dx2) ln |W[psi_d1, ..., psi_dm](x)|,
//
// with eigenfunctions W[psi_d1..psi_dm, psi_n] / W[psi_d1..psi_dm] at the
// unchanged energies E_n, n not in D.  The deformation is regular iff the
// seed Wronskian never vanishes; for bound-state deletions this is the
// classical admissibility condition  prod_{d in D} (n - d) >= 0 for every
// level index n >= 0, which forces D to be a union of adjacent pairs
// (optionally preceded by a prefix 0..M-1, the Darboux-Crum case).
//
// Wronskians are evaluated from (psi, psi') data alone.  Inside the
// determinant every derivative row of order >= 2 can be reduced, by adding
// x-dependent multiples of lower-order rows (a determinant-preserving
// operation at each fixed x), to the "pure" form
//
//     f^(2j)   -> (-E_k)^j psi_k ,      f^(2j+1) -> (-E_k)^j psi_k' ,
//
// because f'' = (V - E) f lets every appearance of V(x) be absorbed into
// rows of lower order with state-independent coefficients.  The same
// reduction applies to the first-derivative determinant
// W' = det(orders 0..m-2, m).  V drops out entirely, so both W and W' are
// exact in the tabulated wavefunctions and continuous across the joint at
// x = 0 where the potential itself jumps.  Only the *second* log-derivative
// feels the jump; it is formed by a guarded five-point stencil applied to
// W'/W, one-sided next to the joint, so the deformed potential keeps the
// expected finite discontinuity at x = 0 and nowhere else.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "swkblab/numeric.hpp"
#include "swkblab/piecewise.hpp"

namespace swkblab {

// ---------------------------------------------------------------------------
// StateSet: a potential together with its lowest eigenstates and their
// tabulated evaluators.

class StateSet {
 public:
  static StateSet solve(const PiecewiseQuadratic& pot, int count) {
    detail::require(count >= 1, "StateSet::solve: count must be positive");
    StateSet out(pot);
    auto sols = lowest_eigenvalues(pot, count);
    if (static_cast<int>(sols.size()) < count)
      throw NonConvergenceError("StateSet::solve: fewer states found than requested");
    out.sol_ = std::move(sols);
    out.tab_.reserve(out.sol_.size());
    for (const auto& s : out.sol_)
      out.tab_.push_back(std::make_shared<const PiecewiseWavefunction>(pot, s));
    for (std::size_t k = 1; k < out.sol_.size(); ++k)
      detail::require(out.sol_[k - 1].E < out.sol_[k].E,
                      "StateSet::solve: energies not strictly increasing");
    return out;
  }

  const PiecewiseQuadratic& potential() const { return pot_; }
  int size() const { return static_cast<int>(sol_.size()); }
  double energy(int k) const { return sol_.at(k).E; }
  const EigenSolution& solution(int k) const { return sol_.at(k); }
  double psi(int k, double x) const { return (*tab_.at(k))(x); }
  double dpsi(int k, double x) const { return tab_.at(k)->derivative(x); }

  // Largest interval on which every held state is tabulated.
  double x_min() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& t : tab_) m = std::max(m, t->x_min());
    return m;
  }
  double x_max() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& t : tab_) m = std::min(m, t->x_max());
    return m;
  }
  bool covers(double x) const { return x >= x_min() && x <= x_max(); }

 private:
  explicit StateSet(const PiecewiseQuadratic& pot) : pot_(pot) {}

  PiecewiseQuadratic pot_;
  std::vector<EigenSolution> sol_;
  std::vector<std::shared_ptr<const PiecewiseWavefunction>> tab_;
};

namespace detail {

// Row "order" entry of the reduced Wronskian matrix: the order-j derivative
// of state k collapses to (-E_k)^floor(j/2) times psi_k (j even) or psi_k'
// (j odd) after the in-determinant reduction described in the header note.
inline double pure_row_entry(const StateSet& set, int k, int order, double x) {
  const double e = -set.energy(k);
  double p = 1.0;
  for (int j = 0; j < order / 2; ++j) p *= e;
  return p * (order % 2 == 0 ? set.psi(k, x) : set.dpsi(k, x));
}

// Determinant of the reduced Wronskian matrix for the given derivative
// orders (one row per order, one column per selected state), by Gaussian
// elimination with partial pivoting.  Returns the determinant together with
// the product of initial column scales, which callers use as the natural
// magnitude against which "numerically zero" is judged.
struct ScaledDet {
  double det;
  double scale;
};

inline ScaledDet wronskian_det(const StateSet& set, const std::vector<int>& idx,
                               const std::vector<int>& orders, double x) {
  const int m = static_cast<int>(idx.size());
  if (m == 0) return {1.0, 1.0};
  std::vector<double> a(static_cast<std::size_t>(m) * m);
  double scale = 1.0;
  for (int c = 0; c < m; ++c) {
    double colmax = 0.0;
    for (int r = 0; r < m; ++r) {
      const double v = pure_row_entry(set, idx[c], orders[r], x);
      a[static_cast<std::size_t>(r) * m + c] = v;
      colmax = std::max(colmax, std::abs(v));
    }
    scale *= colmax;
  }
  double det = 1.0;
  for (int p = 0; p < m; ++p) {
    int piv = p;
    for (int r = p + 1; r < m; ++r)
      if (std::abs(a[static_cast<std::size_t>(r) * m + p]) >
          std::abs(a[static_cast<std::size_t>(piv) * m + p]))
        piv = r;
    if (piv != p) {
      for (int c = p; c < m; ++c)
        std::swap(a[static_cast<std::size_t>(p) * m + c],
                  a[static_cast<std::size_t>(piv) * m + c]);
      det = -det;
    }
    const double d = a[static_cast<std::size_t>(p) * m + p];
    if (d == 0.0) return {0.0, scale};
    det *= d;
    for (int r = p + 1; r < m; ++r) {
      const double f = a[static_cast<std::size_t>(r) * m + p] / d;
      if (f == 0.0) continue;
      for (int c = p; c < m; ++c)
        a[static_cast<std::size_t>(r) * m + c] -=
            f * a[static_cast<std::size_t>(p) * m + c];
    }
  }
  return {det, scale};
}

inline std::vector<int> consecutive_orders(int m) {
  std::vector<int> o(m);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

inline std::vector<int> derivative_orders(int m) {
  // Differentiating a determinant of consecutive derivative rows leaves a
  // single surviving term: the last row bumped by one order.
  std::vector<int> o = consecutive_orders(m);
  if (m >= 1) o.back() = m;
  return o;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Wronskian evaluation.

struct WronskianEval {
  double value;   // W[selected states](x)
  double dlog;    // (ln W)'
  double d2log;   // (ln W)'' via guarded five-point stencil of dlog
};

inline double wronskian_value(const StateSet& set, const std::vector<int>& idx,
                              double x) {
  return detail::wronskian_det(set, idx, detail::consecutive_orders(
                                             static_cast<int>(idx.size())), x)
      .det;
}

inline double wronskian_derivative(const StateSet& set,
                                   const std::vector<int>& idx, double x) {
  if (idx.empty()) return 0.0;
  return detail::wronskian_det(set, idx, detail::derivative_orders(
                                             static_cast<int>(idx.size())), x)
      .det;
}

namespace detail {

inline double wronskian_dlog(const StateSet& set, const std::vector<int>& idx,
                             double x) {
  if (idx.empty()) return 0.0;
  const int m = static_cast<int>(idx.size());
  const auto w = wronskian_det(set, idx, consecutive_orders(m), x);
  if (w.scale == 0.0 || std::abs(w.det) <= 1e-13 * w.scale)
    throw std::domain_error("wronskian_eval: Wronskian vanishes at x = " +
                            std::to_string(x));
  const auto wp = wronskian_det(set, idx, derivative_orders(m), x);
  return wp.det / w.det;
}

// Five-point first derivative of g at x.  Central where the window stays on
// one side of the joint; the step shrinks as the joint is approached and the
// stencil flips to a one-sided form right next to (or on) x = 0, so that no
// sample crosses the potential's discontinuity.  All offsets are multiples
// of the shared table lattice: when x itself is a knot the samples read raw
// table data, and for arbitrary x they at least share the intra-cell phase,
// which cancels the interpolant's systematic cell-boundary error pattern in
// the antisymmetric difference.
inline double guarded_stencil(const std::function<double(double)>& g, double x) {
  const double hs = kTableStep;
  const double h0 = 10.0 * hs;
  double h = h0;
  if (std::abs(x) >= 2.0 * h0) {
    h = h0;
  } else if (std::abs(x) >= 4.0 * hs) {
    h = std::floor(std::abs(x) / (2.0 * hs)) * hs;  // largest lattice step with 2h <= |x|
  } else {
    // One-sided on the side of the joint that x belongs to (x = 0 counts as
    // the right side, fixing the one-sided-limit convention there).
    const double s = (x < 0.0) ? -1.0 : 1.0;
    const double g0 = g(x), g1 = g(x + s * h0), g2 = g(x + 2 * s * h0),
                 g3 = g(x + 3 * s * h0), g4 = g(x + 4 * s * h0);
    return s * (-25.0 * g0 + 48.0 * g1 - 36.0 * g2 + 16.0 * g3 - 3.0 * g4) /
           (12.0 * h0);
  }
  const double gm2 = g(x - 2 * h), gm1 = g(x - h), gp1 = g(x + h),
               gp2 = g(x + 2 * h);
  return (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h);
}

}  // namespace detail

inline WronskianEval wronskian_eval(const StateSet& set,
                                    const std::vector<int>& idx, double x) {
  if (idx.empty()) return {1.0, 0.0, 0.0};
  WronskianEval out{};
  out.value = wronskian_value(set, idx, x);
  out.dlog = detail::wronskian_dlog(set, idx, x);
  out.d2log = detail::guarded_stencil(
      [&](double xx) { return detail::wronskian_dlog(set, idx, xx); }, x);
  return out;
}

// ---------------------------------------------------------------------------
// Deformed systems.

class DeformedSystem {
 public:
  DeformedSystem(const StateSet& base, std::vector<int> deletions)
      : base_(std::make_shared<const StateSet>(base)), del_(std::move(deletions)) {
    std::sort(del_.begin(), del_.end());
    detail::require(std::adjacent_find(del_.begin(), del_.end()) == del_.end(),
                    "DeformedSystem: repeated deletion index");
    detail::require(del_.empty() || (del_.front() >= 0 && del_.back() < base_->size()),
                    "DeformedSystem: deletion index out of range");
    for (int n = 0; n < base_->size(); ++n)
      if (std::find(del_.begin(), del_.end(), n) == del_.end())
        kept_.push_back(n);
    validate_admissibility();
    if (!del_.empty()) validate_sign_constancy();
    normalize_states();
  }

  const std::vector<int>& deletions() const { return del_; }
  const std::vector<int>& retained() const { return kept_; }
  int size() const { return static_cast<int>(kept_.size()); }
  double energy(int j) const { return base_->energy(kept_.at(j)); }
  const StateSet& base() const { return *base_; }

  // Deformed potential V(x) - 2 (ln W)''; one-sided limit from the right at
  // the joint, finite jump allowed there.
  double potential(double x) const {
    if (del_.empty()) return base_->potential()(x);
    return base_->potential()(x) -
           2.0 * detail::guarded_stencil(
                     [&](double xx) {
                       return detail::wronskian_dlog(*base_, del_, xx);
                     },
                     x);
  }

  // j-th retained eigenfunction, unit L2 norm.
  double state(int j, double x) const {
    const int n = kept_.at(j);
    if (del_.empty()) return base_->psi(n, x);
    if (!base_->covers(x)) return 0.0;
    auto num_idx = del_;
    num_idx.push_back(n);
    const int m = static_cast<int>(num_idx.size());
    const double num =
        detail::wronskian_det(*base_, num_idx, detail::consecutive_orders(m), x).det;
    const double den = wronskian_value(*base_, del_, x);
    if (den == 0.0) return 0.0;
    return norm_.at(j) * num / den;
  }

 private:
  void validate_admissibility() {
    if (del_.empty()) return;
    for (int n = 0; n <= del_.back() + 1; ++n) {
      double prod = 1.0;
      for (int d : del_) prod *= static_cast<double>(n - d);
      detail::require(prod >= 0.0,
                      "DeformedSystem: inadmissible deletion set (the product "
                      "over deletions of (n - d) turns negative)");
    }
  }

  void validate_sign_constancy() {
    const double xa = std::max(base_->x_min() + 0.05, -8.0);
    const double xb = std::min(base_->x_max() - 0.05, 8.0);
    int sign = 0;
    for (double x = xa; x <= xb; x += 0.02) {
      const auto w = detail::wronskian_det(
          *base_, del_, detail::consecutive_orders(static_cast<int>(del_.size())), x);
      if (w.scale == 0.0) continue;
      if (std::abs(w.det) <= 1e-12 * w.scale)
        throw std::invalid_argument(
            "DeformedSystem: seed Wronskian numerically vanishes on the line");
      const int s = w.det > 0.0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign)
        throw std::invalid_argument(
            "DeformedSystem: seed Wronskian changes sign on the line");
    }
  }

  void normalize_states() {
    norm_.assign(kept_.size(), 1.0);
    if (del_.empty()) return;  // base states are already unit-normalized
    const double xa = std::max(base_->x_min() + 0.02, -8.6);
    const double xb = std::min(base_->x_max() - 0.02, 8.6);
    for (std::size_t j = 0; j < kept_.size(); ++j) {
      auto num_idx = del_;
      num_idx.push_back(kept_[j]);
      const auto orders = detail::consecutive_orders(static_cast<int>(num_idx.size()));
      auto density = [&](double x) {
        const double num = detail::wronskian_det(*base_, num_idx, orders, x).det;
        const double den = wronskian_value(*base_, del_, x);
        if (den == 0.0) return 0.0;
        const double r = num / den;
        return r * r;
      };
      // Split at the joint: each half of the density is smooth there.
      const double nrm2 = integrate(density, xa, 0.0, 1e-9, 1e-9) +
                          integrate(density, 0.0, xb, 1e-9, 1e-9);
      detail::require(nrm2 > 0.0, "DeformedSystem: deformed state has zero norm");
      norm_[j] = 1.0 / std::sqrt(nrm2);
    }
  }

  std::shared_ptr<const StateSet> base_;
  std::vector<int> del_;
  std::vector<int> kept_;
  std::vector<double> norm_;
};

// Darboux-Crum transformation: delete the prefix 0..M-1.  M = 0 is the
// identity.
inline DeformedSystem darboux_crum(const StateSet& set, int M) {
  detail::require(M >= 0 && M <= set.size(),
                  "darboux_crum: M must lie in [0, number of held states]");
  std::vector<int> del(M);
  std::iota(del.begin(), del.end(), 0);
  return DeformedSystem(set, std::move(del));
}

// Krein-Adler transformation: delete an admissible set D.
inline DeformedSystem krein_adler(const StateSet& set, std::vector<int> D) {
  return DeformedSystem(set, std::move(D));
}

// The sequence of systems strictly isospectral to the harmonic oscillator:
// delete all ell negative-energy levels of the step system with a = 4 ell.
// The resulting spectrum is {2n : n >= 0}.
inline DeformedSystem iso_sequence(int ell, int extra_states = 8) {
  detail::require(ell >= 1, "iso_sequence: ell must be >= 1");
  auto base = StateSet::solve(PiecewiseQuadratic::step(4.0 * ell), ell + extra_states);
  return darboux_crum(base, ell);
}

// ---------------------------------------------------------------------------
// Generic shooting re-solver over a sampled potential.  Verifies deformed
// spectra without reusing any structure of the construction: the potential is
// sampled once on a uniform grid (half-step resolution for the RK4 midpoints),
// integrated from both ends, and eigenvalues are located as sign changes of
// the scaled Wronskian mismatch of the two solutions at a fixed match point.

struct ShootingOptions {
  double x_lo = -8.0;
  double x_hi = 8.0;
  double match_x = 0.0;  // used only when the interval does not straddle 0
  int steps = 16000;
  double scan_step = 0.1;
};

namespace detail {

// Side-pure sampled potential: when the interval straddles the joint the two
// sweeps meet exactly at x = 0, each using only its own side's samples (the
// left table's final sample is the left-side limit), so no RK4 step ever
// crosses the potential's discontinuity.  Matching value and slope at the
// joint is exact for a finite jump in V.
struct ShootingTable {
  std::vector<double> vl, vr;  // half-step samples: left x_lo..x_m, right x_m..x_hi
  double x_lo, x_hi, x_m, hl, hr;
  int nl, nr;
};

inline ShootingTable make_shooting_table(const std::function<double(double)>& V,
                                         const ShootingOptions& opt) {
  ShootingTable t;
  t.x_lo = opt.x_lo;
  t.x_hi = opt.x_hi;
  t.x_m = (opt.x_lo < 0.0 && opt.x_hi > 0.0)
              ? 0.0
              : std::clamp(opt.match_x, opt.x_lo + 4 * (opt.x_hi - opt.x_lo) / opt.steps,
                           opt.x_hi - 4 * (opt.x_hi - opt.x_lo) / opt.steps);
  const double frac = (t.x_m - opt.x_lo) / (opt.x_hi - opt.x_lo);
  t.nl = std::clamp(static_cast<int>(std::lround(opt.steps * frac)), 4, opt.steps - 4);
  t.nr = opt.steps - t.nl;
  t.hl = (t.x_m - opt.x_lo) / t.nl;
  t.hr = (opt.x_hi - t.x_m) / t.nr;
  t.vl.resize(static_cast<std::size_t>(2 * t.nl) + 1);
  t.vr.resize(static_cast<std::size_t>(2 * t.nr) + 1);
  for (std::size_t i = 0; i < t.vl.size(); ++i) {
    double x = opt.x_lo + 0.5 * t.hl * static_cast<double>(i);
    if (t.x_m == 0.0 && i + 1 == t.vl.size()) x = -1e-9;  // left-side limit at the joint
    t.vl[i] = V(x);
  }
  for (std::size_t i = 0; i < t.vr.size(); ++i)
    t.vr[i] = V(t.x_m + 0.5 * t.hr * static_cast<double>(i));
  return t;
}

// y'' = (V - E) y integrated with classical RK4 over one sampled sweep,
// normalized at the end.  dir = +1 walks v forward, -1 backward.
inline void shooting_sweep(const std::vector<double>& v, double h, int n, int dir,
                           double E, double& y, double& dy) {
  const int i_from = dir > 0 ? 0 : n;
  y = 1.0;
  dy = -dir * std::sqrt(std::max(v[static_cast<std::size_t>(2 * i_from)] - E, 0.5));
  const double hh = dir * h;
  int guard = 0;
  for (int i = i_from; i != (dir > 0 ? n : 0); i += dir) {
    const std::size_t base = static_cast<std::size_t>(2 * i);
    const double q0 = v[base] - E;
    const double qm = v[base + dir] - E;
    const double q1 = v[base + 2 * dir] - E;
    const double k1y = dy, k1d = q0 * y;
    const double k2y = dy + 0.5 * hh * k1d, k2d = qm * (y + 0.5 * hh * k1y);
    const double k3y = dy + 0.5 * hh * k2d, k3d = qm * (y + 0.5 * hh * k2y);
    const double k4y = dy + hh * k3d, k4d = q1 * (y + hh * k3y);
    y += hh / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    dy += hh / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    if (++guard % 512 == 0) {
      const double s = std::hypot(y, dy);
      if (s > 1e100) {
        y /= s;
        dy /= s;
      }
    }
  }
  const double s = std::hypot(y, dy);
  y /= s;
  dy /= s;
}

inline double shooting_mismatch(const ShootingTable& t, double E) {
  double yl, dl, yr, dr;
  shooting_sweep(t.vl, t.hl, t.nl, +1, E, yl, dl);
  shooting_sweep(t.vr, t.hr, t.nr, -1, E, yr, dr);
  const double num = yl * dr - dl * yr;
  const double den = std::abs(yl * dr) + std::abs(dl * yr) + std::abs(yl * yr) +
                     std::abs(dl * dr) + std::numeric_limits<double>::min();
  return num / den;
}

}  // namespace detail

inline std::vector<double> shooting_levels(const std::function<double(double)>& V,
                                           double E_lo, double E_hi,
                                           const ShootingOptions& opt = {}) {
  detail::require(opt.x_hi > opt.x_lo && opt.steps >= 16 && E_hi > E_lo,
                  "shooting_levels: malformed options");
  const detail::ShootingTable t = detail::make_shooting_table(V, opt);

  std::vector<double> levels;
  double e_prev = E_lo;
  double f_prev = detail::shooting_mismatch(t, e_prev);
  for (double e = E_lo + opt.scan_step; e <= E_hi + 1e-12; e += opt.scan_step) {
    const double f = detail::shooting_mismatch(t, e);
    if (f_prev == 0.0) levels.push_back(e_prev);
    else if (f_prev * f < 0.0) {
      double a = e_prev, b = e, fa = f_prev;
      for (int it = 0; it < 80 && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = detail::shooting_mismatch(t, m);
        if (fa * fm <= 0.0) b = m;
        else {
          a = m;
          fa = fm;
        }
      }
      levels.push_back(0.5 * (a + b));
    }
    e_prev = e;
    f_prev = f;
  }
  return levels;
}

// ---------------------------------------------------------------------------
// Shape-invariance diagnostic.  The first Darboux partner of a step system is
// compared against the best constant-shifted member of the step family
// itself; a genuinely shape-invariant family would leave no residual.  The
// fit is linear in (overall shift c, left-step depth a'), performed away from
// the joint; the maximal absolute residual over the probe grid is reported.

struct ShapeInvarianceReport {
  double fitted_a;      // best-fit left-step depth of the partner
  double fitted_shift;  // best-fit overall energy shift
  double max_residual;  // worst deviation of the partner from the fit
};

inline ShapeInvarianceReport shape_invariance_defect(int ell) {
  detail::require(ell >= 1, "shape_invariance_defect: ell must be >= 1");
  auto base = StateSet::solve(PiecewiseQuadratic::step(4.0 * ell), ell + 6);
  auto partner = darboux_crum(base, 1);
  std::vector<double> xs, dev, left;
  for (double x = -6.0; x <= 6.0 + 1e-12; x += 0.05) {
    if (std::abs(x) < 0.5) continue;  // keep clear of the joint
    xs.push_back(x);
    dev.push_back(partner.potential(x) - (x * x - 1.0));
    left.push_back(x < 0.0 ? 1.0 : 0.0);
  }
  // Least squares for dev ~ c - a' * [x < 0].
  double s1 = 0, sl = 0, sll = 0, sd = 0, sld = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s1 += 1.0;
    sl += left[i];
    sll += left[i] * left[i];
    sd += dev[i];
    sld += left[i] * dev[i];
  }
  const double det = s1 * sll - sl * sl;
  const double c = (sd * sll - sl * sld) / det;
  const double ma = -(s1 * sld - sl * sd) / det;
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    worst = std::max(worst, std::abs(dev[i] - (c - ma * left[i])));
  return {ma, c, worst};
}

}  // namespace swkblab
