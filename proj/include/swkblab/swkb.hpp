#pragma once

// Quantization-condition machinery: classical turning intervals of
// E - W(x)^2, the action integral between them (optionally weighted by a
// position-dependent mass profile), closed forms where they exist, the
// inverse solve E(n), and tabulated accuracy reports.

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "swkblab/catalog.hpp"
#include "swkblab/numeric.hpp"

namespace swkblab {

struct TurningInterval {
  double left = 0.0;
  double right = 0.0;
  double width() const { return right - left; }
};

struct SwkbReport {
  int n = 0;
  double I = 0.0;
  double I_over_pi_hbar = 0.0;
  double err = 0.0;           // (I - n pi hbar) / I, zero for n = 0
  double err_rescaled = 0.0;  // sgn(err) * 2^(log10 |err|)
  double delta = 0.0;         // n pi hbar - I
  int n_intervals = 0;
};

namespace detail {

// Expand an endpoint outward (doubling the offset from an anchor) until the
// predicate holds there.
template <typename F>
double expand_until(const F& pred, double anchor, double direction,
                    int max_doublings, const char* what) {
  double step = std::max(1.0, std::abs(anchor));
  for (int i = 0; i < max_doublings; ++i) {
    double x = anchor + direction * step;
    if (pred(x)) return x;
    step *= 2.0;
  }
  throw NonConvergenceError(std::string(what) +
                            ": endpoint expansion did not terminate");
}

// Zeros of W: the well bottoms.  Every cataloged system has at least one
// (W < 0 toward the lower edge, W > 0 toward the upper one).
inline std::vector<double> superpotential_zeros(const SuperpotentialSpec& s,
                                                int scan_points) {
  double L = std::isfinite(s.x_min)
                 ? s.x_min + 1e-8
                 : expand_until([&](double x) { return s.W(x) < 0.0; }, 0.0,
                                -1.0, 60, s.name.c_str());
  double R = std::isfinite(s.x_max)
                 ? s.x_max - 1e-8
                 : expand_until([&](double x) { return s.W(x) > 0.0; }, 0.0,
                                1.0, 60, s.name.c_str());
  std::vector<double> zeros;
  double prev_x = L, prev_w = s.W(L);
  for (int i = 1; i <= scan_points; ++i) {
    double x = L + (R - L) * i / scan_points;
    double w = s.W(x);
    if ((w > 0.0) != (prev_w > 0.0)) {
      double a = prev_x, b = x, fa = prev_w;
      while (b - a > 1e-12) {
        double m = 0.5 * (a + b), fm = s.W(m);
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_w = w;
  }
  if (zeros.empty())
    throw NonConvergenceError(s.name + ": superpotential has no zero");
  return zeros;
}

}  // namespace detail

// Classically allowed intervals {x : E - W(x)^2 > 0}.  Endpoints are located
// by a uniform sign scan refined with bisection; touching ("pinched")
// intervals narrower than 1e-10 are dropped.  E = 0 yields the degenerate
// points where W vanishes.
inline std::vector<TurningInterval> turning_intervals(
    const SuperpotentialSpec& s, double E, int scan_points = 4096) {
  if (scan_points < 16) throw std::invalid_argument("scan too coarse");
  if (E < 0.0) return {};

  const bool lo_finite = std::isfinite(s.x_min);
  const bool hi_finite = std::isfinite(s.x_max);

  if (E == 0.0) {
    // Degenerate intervals at the zeros of W.
    std::vector<TurningInterval> out;
    for (double z : detail::superpotential_zeros(s, scan_points))
      out.push_back({z, z});
    return out;
  }

  auto f = [&](double x) {
    double w = s.W(x);
    return E - w * w;
  };
  // Anchor the window expansion at the well bottoms so off-centered wells
  // (and every lobe between them) stay inside the scan.
  auto zeros = detail::superpotential_zeros(s, scan_points);
  double L = lo_finite ? s.x_min + 1e-8
                       : detail::expand_until(
                             [&](double x) { return f(x) < 0.0; },
                             zeros.front(), -1.0, 60, s.name.c_str());
  double R = hi_finite ? s.x_max - 1e-8
                       : detail::expand_until(
                             [&](double x) { return f(x) < 0.0; },
                             zeros.back(), 1.0, 60, s.name.c_str());
  if (!(L < R)) throw std::logic_error(s.name + ": empty scan window");

  // Collect sign changes of f along the window.
  std::vector<double> roots;
  double prev_x = L, prev_f = f(L);
  for (int i = 1; i <= scan_points; ++i) {
    double x = L + (R - L) * i / scan_points;
    double fx = f(x);
    if (fx == 0.0) fx = -std::numeric_limits<double>::min();
    if ((fx > 0.0) != (prev_f > 0.0)) {
      double a = prev_x, b = x, fa = prev_f;
      while (b - a > 1e-12) {
        double m = 0.5 * (a + b), fm = f(m);
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = fx;
  }
  // f < 0 at both window ends, so the roots pair up.
  std::vector<TurningInterval> out;
  for (std::size_t k = 0; k + 1 < roots.size(); k += 2) {
    TurningInterval iv{roots[k], roots[k + 1]};
    if (iv.width() < 1e-10) continue;  // pinched touching point
    if (f(0.5 * (iv.left + iv.right)) <= 0.0) continue;
    out.push_back(iv);
  }
  return out;
}

namespace detail {

// Integral of sqrt(E - W^2) [/ eta] over one classically allowed interval,
// with the square-root endpoints removed by x = mid + halfwidth sin(theta).
inline double action_over(const SuperpotentialSpec& s, double E,
                          const TurningInterval& iv, bool use_eta) {
  const double m = 0.5 * (iv.left + iv.right);
  const double w = 0.5 * (iv.right - iv.left);
  if (w <= 0.0) return 0.0;
  auto g = [&](double th) {
    double x = m + w * std::sin(th);
    double Wx = s.W(x);
    double v = E - Wx * Wx;
    if (v <= 0.0) return 0.0;
    double val = std::sqrt(v) * w * std::cos(th);
    if (use_eta) val /= s.eta(x);
    return val;
  };
  return integrate(g, -M_PI / 2.0, M_PI / 2.0, 1e-12, 1e-10);
}

}  // namespace detail

inline double swkb_integral(const SuperpotentialSpec& s, double E) {
  if (E <= 0.0) return 0.0;
  KahanSum total;
  for (const auto& iv : turning_intervals(s, E))
    total.add(detail::action_over(s, E, iv, false));
  return total.sum;
}

// The same action with the mass-deformation weight 1/eta under the root's
// integral; requires the spec to carry an eta profile.
inline double swkb_extended_integral(const SuperpotentialSpec& s, double E) {
  if (!s.has_eta())
    throw std::invalid_argument(s.name + ": no mass profile for extended rule");
  if (E <= 0.0) return 0.0;
  KahanSum total;
  for (const auto& iv : turning_intervals(s, E))
    total.add(detail::action_over(s, E, iv, true));
  return total.sum;
}

inline bool has_swkb_closed_form(const SuperpotentialSpec& s) {
  return s.name == "harmonic" || s.name == "radial" ||
         s.name == "poschl-teller";
}

inline double swkb_closed_form(const SuperpotentialSpec& s, double E) {
  if (s.name == "harmonic") return M_PI * E / (2.0 * s.params.at("omega"));
  if (s.name == "radial") return M_PI * E / (4.0 * s.params.at("omega"));
  if (s.name == "poschl-teller") {
    double gh = s.params.at("g") + s.params.at("h");
    double hb = s.hbar;
    return 0.5 * M_PI * (std::sqrt(E + hb * hb * gh * gh) - hb * gh);
  }
  throw std::invalid_argument("no closed-form action for " + s.name);
}

// Solve the quantization condition I(E) = n pi hbar for E.  The action is
// monotone in E; energies past a dissociation threshold (where the allowed
// region becomes unbounded) are treated as an upper bracket.
inline double quantize_energy(const SuperpotentialSpec& s, int n) {
  if (n < 0) throw std::invalid_argument("quantize_energy: n must be >= 0");
  if (n == 0) return 0.0;
  const double target = n * M_PI * s.hbar;
  const bool ext = s.has_eta();
  auto f = [&](double E) {
    return (ext ? swkb_extended_integral(s, E) : swkb_integral(s, E)) - target;
  };

  double lo = 0.0;          // f(0) = -target < 0
  double hi = 2.0 * target;  // generic energy scale of level n
  bool hi_ok = false;
  double fhi = 0.0;
  for (int i = 0; i < 200; ++i) {
    try {
      fhi = f(hi);
      hi_ok = true;
    } catch (const NonConvergenceError&) {
      hi_ok = false;  // unbounded allowed region: E too large
    }
    if (hi_ok && fhi < 0.0) {
      lo = hi;
      hi *= 2.0;
      continue;
    }
    break;
  }
  // Shrink an unevaluable upper end back toward the bracket.
  while (!hi_ok) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi))
      throw NonConvergenceError(s.name + ": quantization bracket collapsed");
    try {
      double fm = f(mid);
      if (fm < 0.0) {
        lo = mid;
      } else {
        hi = mid;
        fhi = fm;
        hi_ok = true;
      }
    } catch (const NonConvergenceError&) {
      hi = mid;
    }
  }
  if (fhi == 0.0) return hi;
  double E = brent_root(f, lo, hi, 1e-13 * std::max(1.0, hi));
  if (std::abs(f(E)) > 1e-10 * std::max(1.0, target))
    throw NonConvergenceError(s.name + ": quantization residual too large");
  return E;
}

inline double rescale_err(double err) {
  if (err == 0.0) return 0.0;
  double mag = std::exp2(std::log10(std::abs(err)));
  return err > 0.0 ? mag : -mag;
}

// Accuracy report of the quantization rule against the exact spectrum.
inline std::vector<SwkbReport> err_table(const SuperpotentialSpec& s, int n_lo,
                                         int n_hi) {
  if (n_lo < 0 || n_hi < n_lo)
    throw std::invalid_argument("err_table: bad level range");
  if (s.n_max) n_hi = std::min(n_hi, *s.n_max);
  std::vector<SwkbReport> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    double E = s.energy(n);
    SwkbReport r;
    r.n = n;
    auto ivs = turning_intervals(s, E);
    r.n_intervals = static_cast<int>(ivs.size());
    KahanSum total;
    for (const auto& iv : ivs)
      total.add(detail::action_over(s, E, iv, s.has_eta()));
    r.I = total.sum;
    r.I_over_pi_hbar = r.I / (M_PI * s.hbar);
    r.delta = n * M_PI * s.hbar - r.I;
    r.err = (n == 0 || r.I == 0.0) ? 0.0 : -r.delta / r.I;
    r.err_rescaled = rescale_err(r.err);
    out.push_back(r);
  }
  return out;
}

inline std::string to_csv(const std::vector<SwkbReport>& rows) {
  std::ostringstream os;
  os << "n,I,I_over_pi_hbar,err,err_rescaled,delta,n_intervals\n";
  os << std::setprecision(12);
  for (const auto& r : rows)
    os << r.n << ',' << r.I << ',' << r.I_over_pi_hbar << ',' << r.err << ','
       << r.err_rescaled << ',' << r.delta << ',' << r.n_intervals << '\n';
  return os.str();
}

}  // namespace swkblab
