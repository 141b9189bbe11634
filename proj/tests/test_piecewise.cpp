#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "swkblab/orthopoly.hpp"
#include "swkblab/piecewise.hpp"

using namespace swkblab;

namespace {

std::string six_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", v);
  return buf;
}

std::vector<double> energies(const std::vector<EigenSolution>& sols) {
  std::vector<double> e;
  for (const auto& s : sols) e.push_back(s.E);
  return e;
}

// L^2 inner product of two tabulated states on a common grid.
double overlap(const PiecewiseQuadratic& pot, const EigenSolution& a,
               const EigenSolution& b) {
  const double h = 1e-3;
  double acc = 0.0;
  for (double x = -9.0; x <= 9.0; x += h)
    acc += h * eigenfunction(pot, a, x) * eigenfunction(pot, b, x);
  return acc;
}

// Relative continuity defect of the stored coefficients at the joint.
double matching_residual(const PiecewiseQuadratic& pot,
                         const EigenSolution& s) {
  const auto l = side_solution(pot.left(), s.E, 0.0);
  const auto r = side_solution(pot.right(), s.E, 0.0);
  const double pl = s.alpha_minus * l.even + s.beta_minus * l.odd;
  const double dl = s.alpha_minus * l.even_prime + s.beta_minus * l.odd_prime;
  const double pr = s.alpha_plus * r.even + s.beta_plus * r.odd;
  const double dr = s.alpha_plus * r.even_prime + s.beta_plus * r.odd_prime;
  const double scale =
      std::abs(pl) + std::abs(dl) + std::abs(pr) + std::abs(dr);
  return (std::abs(pl - pr) + std::abs(dl - dr)) / scale;
}

}  // namespace

TEST_CASE("piecewise potential constructors and invariants", "[piecewise]") {
  auto g12 = PiecewiseQuadratic::gamma_mod(1, 2);
  CHECK(g12.family() == PiecewiseFamily::gamma_mod);
  CHECK(g12.gamma() == Catch::Approx(0.5));
  // V = ((1+g)/2)^2 x^2 - (1+g)/2 on the left, steeper mirror on the right.
  CHECK(g12(-2.0) == Catch::Approx(0.75 * 0.75 * 4.0 - 0.75));
  CHECK(g12(2.0) == Catch::Approx(1.5 * 1.5 * 4.0 - 1.5));
  CHECK(g12(0.0) == Catch::Approx(-1.5));

  // Fractions reduce; ratios above one reflect to their reciprocal.
  auto g24 = PiecewiseQuadratic::gamma_mod(2, 4);
  CHECK(g24.gamma_p() == 1);
  CHECK(g24.gamma_q() == 2);
  auto g32 = PiecewiseQuadratic::gamma_mod(3, 2);
  CHECK(g32.gamma_p() == 2);
  CHECK(g32.gamma_q() == 3);
  auto g23 = PiecewiseQuadratic::gamma_mod(2, 3);
  CHECK(g32(-1.3) == Catch::Approx(g23(-1.3)));

  auto st = PiecewiseQuadratic::step(2.0);
  CHECK(st(-0.5) == Catch::Approx(0.25 - 3.0));
  CHECK(st(0.5) == Catch::Approx(0.25 - 1.0));
  CHECK(st.min_energy() == Catch::Approx(-3.0));

  auto sr = PiecewiseQuadratic::step_ramp(2.0, 1.0);
  CHECK(sr(-1.0) == Catch::Approx(1.0 + 1.0 - 3.0));
  CHECK(sr(1.0) == Catch::Approx(0.0));
  CHECK(sr.left().center() == Catch::Approx(0.5));
  CHECK(sr.left().floor_energy() == Catch::Approx(-3.25));

  CHECK_THROWS_AS(PiecewiseQuadratic::gamma_mod(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseQuadratic::step(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseQuadratic::custom({-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(eigenvalues(st, 5.0, 2.0), std::invalid_argument);
}

TEST_CASE("side solutions reduce to the oscillator basis", "[piecewise]") {
  const Quadratic ho{1.0, 0.0, -1.0};  // V = x^2 - 1, levels E = 2n
  // At the center the basis is normalized to (1, 0) and (0, sqrt(w)).
  auto c = side_solution(ho, 1.23, 0.0);
  CHECK(c.even == Catch::Approx(1.0));
  CHECK(c.even_prime == Catch::Approx(0.0).margin(1e-14));
  CHECK(c.odd == Catch::Approx(0.0).margin(1e-14));
  CHECK(c.odd_prime == Catch::Approx(1.0));

  // E = 0: the even member is the Gaussian ground state.
  for (double x : {-1.5, -0.3, 0.8, 2.0}) {
    auto s = side_solution(ho, 0.0, x);
    CHECK(s.even == Catch::Approx(std::exp(-0.5 * x * x)).epsilon(1e-12));
    CHECK(s.even_prime ==
          Catch::Approx(-x * std::exp(-0.5 * x * x)).margin(1e-12));
  }
  // E = 4: the even member is proportional to (1 - 2x^2) e^{-x^2/2}.
  for (double x : {-1.2, 0.4, 1.7}) {
    auto s = side_solution(ho, 4.0, x);
    CHECK(s.even ==
          Catch::Approx((1.0 - 2.0 * x * x) * std::exp(-0.5 * x * x))
              .margin(1e-12));
  }
  // A shifted piece is centered at its vertex.
  const Quadratic ramp{1.0, 1.0, -2.0};  // center -1/2
  auto sc = side_solution(ramp, 0.7, -0.5);
  CHECK(sc.even == Catch::Approx(1.0));
  CHECK(sc.odd == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("spectral determinant vanishes exactly on the exact levels",
          "[piecewise]") {
  // Pure oscillator as a degenerate step: zeros at E = 2n only.
  auto ho = PiecewiseQuadratic::step(0.0);
  for (int n = 0; n <= 6; ++n)
    CHECK(std::abs(spectral_determinant(ho, 2.0 * n)) < 1e-12);
  for (double e : {1.0, 3.0, 5.0, 7.7})
    CHECK(std::abs(spectral_determinant(ho, e)) > 1e-3);

  // Slope-modulated gamma = 1/2: exact levels at multiples of 6 and nowhere
  // else among the even integers; odd multiples of 3 are not eigenvalues
  // (their one-sided terminations have mismatched parity).
  auto g12 = PiecewiseQuadratic::gamma_mod(1, 2);
  for (double e : {0.0, 6.0, 12.0, 18.0})
    CHECK(std::abs(spectral_determinant(g12, e)) < 1e-9);
  for (double e : {3.0, 9.0, 15.0})
    CHECK(std::abs(spectral_determinant(g12, e)) > 1e-3);

  // Step with a = 4l: every even nonnegative integer is a zero.
  auto s8 = PiecewiseQuadratic::step(8.0);
  for (int m = 0; m <= 8; ++m)
    CHECK(std::abs(spectral_determinant(s8, 2.0 * m)) < 1e-9);
}

TEST_CASE("slope-modulated spectra match the reference tables", "[piecewise]") {
  auto g12 = PiecewiseQuadratic::gamma_mod(1, 2);
  auto sols = eigenvalues(g12, g12.min_energy() - 0.1, 12.5);
  REQUIRE(sols.size() == 7);
  const double expect12[] = {0.0,         1.961557549, 4.022774401, 6.0,
                             7.987565804, 10.010051022, 12.0};
  const bool exact12[] = {true, false, false, true, false, false, true};
  for (int i = 0; i < 7; ++i) {
    CHECK(sols[i].E == Catch::Approx(expect12[i]).margin(2e-9));
    CHECK(sols[i].nodes == i);
    CHECK(sols[i].hermite.has_value() == exact12[i]);
  }
  CHECK(six_sig(sols[1].E) == "1.96156");
  CHECK(six_sig(sols[2].E) == "4.02277");
  CHECK(six_sig(sols[4].E) == "7.98757");
  CHECK(six_sig(sols[5].E) == "10.0101");
  // The exact levels are hit to full precision.
  CHECK(std::abs(sols[0].E) < 1e-9);
  CHECK(std::abs(sols[3].E - 6.0) < 1e-9);
  CHECK(std::abs(sols[6].E - 12.0) < 1e-9);

  auto g13 = PiecewiseQuadratic::gamma_mod(1, 3);
  auto sols3 = eigenvalues(g13, g13.min_energy() - 0.1, 12.5);
  REQUIRE(sols3.size() == 7);
  const double expect13[] = {0.0,         1.924122427, 4.0, 6.032477073,
                             8.0,         9.979446839, 12.0};
  const bool exact13[] = {true, false, true, false, true, false, true};
  for (int i = 0; i < 7; ++i) {
    CHECK(sols3[i].E == Catch::Approx(expect13[i]).margin(2e-9));
    CHECK(sols3[i].nodes == i);
    CHECK(sols3[i].hermite.has_value() == exact13[i]);
  }
  CHECK(six_sig(sols3[1].E) == "1.92412");
  CHECK(six_sig(sols3[3].E) == "6.03248");
  CHECK(six_sig(sols3[5].E) == "9.97945");
}

TEST_CASE("step spectra match the reference table and closed forms",
          "[piecewise]") {
  auto s2 = PiecewiseQuadratic::step(2.0);
  auto sols = eigenvalues(s2, s2.min_energy() - 0.1, 11.5);
  REQUIRE(sols.size() == 7);
  const double expect[] = {-1.30908138432, 1.09714197917, 2.9371454041,
                           5.04458989562,  6.96479035741, 9.02869975171,
                           10.9755690648};
  const char* shown[] = {"-1.30908", "1.09714", "2.93715", "5.04459",
                         "6.96479",  "9.02870", "10.9756"};
  for (int i = 0; i < 7; ++i) {
    CHECK(sols[i].E == Catch::Approx(expect[i]).margin(2e-9));
    CHECK(sols[i].nodes == i);
    CHECK(six_sig(sols[i].E) == shown[i]);
    CHECK_FALSE(sols[i].hermite.has_value());  // a = 2 is not a multiple of 4
  }

  // a = 4: one negative level at exactly -3, then E_n = 2(n-1).
  auto s4 = PiecewiseQuadratic::step(4.0);
  auto sols4 = eigenvalues(s4, -4.0, 12.5);
  REQUIRE(sols4.size() == 8);
  CHECK(sols4[0].E == Catch::Approx(-3.0).margin(1e-10));
  CHECK_FALSE(sols4[0].hermite.has_value());
  for (int n = 1; n < 8; ++n) {
    CHECK(sols4[n].E == Catch::Approx(2.0 * (n - 1)).margin(1e-10));
    REQUIRE(sols4[n].hermite.has_value());
    CHECK(sols4[n].hermite->left_order == n + 1);
    CHECK(sols4[n].hermite->right_order == n - 1);
    const double expect_ratio =
        n % 2 == 1 ? -1.0 / (2.0 * n) : -1.0 / (2.0 * (n + 1));
    CHECK(sols4[n].hermite->ratio == Catch::Approx(expect_ratio));
    CHECK(sols4[n].nodes == n);
  }
}

TEST_CASE("algebraic negative levels of the deep steps", "[piecewise]") {
  auto r1 = algebraic_eigenvalues(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == Catch::Approx(-3.0).margin(1e-12));

  // l = 2: roots of E^2 + 10E + 22, i.e. -5 +- sqrt(3).
  auto r2 = algebraic_eigenvalues(2);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == Catch::Approx(-5.0 - std::sqrt(3.0)).margin(1e-12));
  CHECK(r2[1] == Catch::Approx(-5.0 + std::sqrt(3.0)).margin(1e-12));

  const double expect6[] = {-22.4357342277, -18.6884797804, -14.8995045068,
                            -11.1004954932, -7.31152021955, -3.56426577228};
  auto r6 = algebraic_eigenvalues(6);
  REQUIRE(r6.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(r6[i] == Catch::Approx(expect6[i]).margin(1e-9));
    CHECK(r6[i] + r6[5 - i] == Catch::Approx(-26.0).margin(1e-9));
  }

  // The generic solver finds the same negative levels for a = 8.
  auto s8 = PiecewiseQuadratic::step(8.0);
  auto neg = eigenvalues(s8, -10.0, -0.5);
  REQUIRE(neg.size() == 2);
  CHECK(neg[0].E == Catch::Approx(-5.0 - std::sqrt(3.0)).margin(1e-9));
  CHECK(neg[1].E == Catch::Approx(-5.0 + std::sqrt(3.0)).margin(1e-9));
}

TEST_CASE("step-and-ramp spectra for both ramp signs", "[piecewise]") {
  auto sm = PiecewiseQuadratic::step_ramp(2.0, -1.0);
  auto sols_m = eigenvalues(sm, sm.min_energy() - 0.1, 8.3);
  REQUIRE(sols_m.size() == 6);
  const double expect_m[] = {-1.9719579129, 0.343665384298, 2.12100552744,
                             4.02740043805, 5.91816926571,  7.81348405744};
  const char* shown_m[] = {"-1.97196", "0.343665", "2.12101",
                           "4.02740",  "5.91817",  "7.81348"};
  for (int i = 0; i < 6; ++i) {
    CHECK(sols_m[i].E == Catch::Approx(expect_m[i]).margin(2e-9));
    CHECK(sols_m[i].nodes == i);
    CHECK(six_sig(sols_m[i].E) == shown_m[i]);
  }

  auto sp = PiecewiseQuadratic::step_ramp(2.0, 1.0);
  auto sols_p = eigenvalues(sp, sp.min_energy() - 0.1, 10.3);
  REQUIRE(sols_p.size() == 6);
  const double expect_p[] = {-0.841571899278, 1.62923784916, 3.67911508743,
                             5.84368620278,   7.92983766311, 10.0316939336};
  for (int i = 0; i < 6; ++i) {
    CHECK(sols_p[i].E == Catch::Approx(expect_p[i]).margin(2e-9));
    CHECK(sols_p[i].nodes == i);
  }

  // Raising the ramp slope raises every level.
  for (int i = 0; i < 6; ++i) CHECK(sols_p[i].E > sols_m[i].E);
}

TEST_CASE("quasi-exact ramp states at the alignment condition", "[piecewise]") {
  const double r0 = std::exp(0.25) / (2.0 * std::sqrt(2.0));

  // g = -sqrt(2), a = 3/2: one polynomial state, second excited, at E = 2.
  auto sm = PiecewiseQuadratic::step_ramp(1.5, -std::sqrt(2.0));
  auto hm = hermite_states(sm, 12);
  REQUIRE(hm.size() == 1);
  CHECK(hm[0].n == 2);
  CHECK(hm[0].E == Catch::Approx(2.0).margin(1e-12));
  CHECK(hm[0].left_order == 2);
  CHECK(hm[0].right_order == 1);
  CHECK(hm[0].ratio == Catch::Approx(r0).epsilon(1e-10));

  auto sols_m = eigenvalues(sm, sm.min_energy() - 0.1, 9.0);
  const double expect_m[] = {-1.87117574748628, 0.263896292203652,
                             2.0,               3.83402986127009,
                             5.69659339565705,  7.53661320965803};
  REQUIRE(sols_m.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(sols_m[i].E == Catch::Approx(expect_m[i]).margin(2e-9));
    CHECK(sols_m[i].hermite.has_value() == (i == 2));
  }
  CHECK(std::abs(sols_m[2].E - 2.0) < 1e-12);

  // g = +sqrt(2): the polynomial state is the first excited one, still E = 2.
  auto sp = PiecewiseQuadratic::step_ramp(1.5, std::sqrt(2.0));
  auto hp = hermite_states(sp, 12);
  REQUIRE(hp.size() == 1);
  CHECK(hp[0].n == 1);
  CHECK(hp[0].E == Catch::Approx(2.0).margin(1e-12));
  CHECK(hp[0].left_order == 2);
  CHECK(hp[0].right_order == 1);
  CHECK(hp[0].ratio == Catch::Approx(-r0).epsilon(1e-10));

  auto sols_p = eigenvalues(sp, sp.min_energy() - 0.1, 9.5);
  const double expect_p[] = {-0.391280243606513, 2.0, 4.19926467461885,
                             6.35165702354679, 8.53217347965043};
  REQUIRE(sols_p.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(sols_p[i].E == Catch::Approx(expect_p[i]).margin(2e-9));
    CHECK(sols_p[i].hermite.has_value() == (i == 1));
  }

  // Neither spectrum has a level anywhere near E = 4.
  for (const auto& s : sols_m) CHECK(std::abs(s.E - 4.0) > 0.15);
  for (const auto& s : sols_p) CHECK(std::abs(s.E - 4.0) > 0.15);

  // The tagged state really is the glued pair of Hermite pieces.
  const auto& tag = *sols_m[2].hermite;
  const RationalPoly HL = hermite_poly(tag.left_order);
  const RationalPoly HR = hermite_poly(tag.right_order);
  const double s0 = -std::sqrt(2.0) / 2.0;
  const double piece_ratio =
      eigenfunction(sm, sols_m[2], -0.9) / eigenfunction(sm, sols_m[2], 0.7);
  const double formula_ratio =
      tag.ratio * std::exp(-0.5 * (0.9 + s0) * (0.9 + s0)) * HL(-0.9 - s0) /
      (std::exp(-0.5 * 0.49) * HR(0.7));
  CHECK(piece_ratio == Catch::Approx(formula_ratio).epsilon(1e-8));

  // No alignment, no polynomial states.
  CHECK(hermite_states(PiecewiseQuadratic::step_ramp(1.5, 1.0)).empty());
  CHECK(hermite_states(PiecewiseQuadratic::step(2.0)).empty());
  CHECK(hermite_states(PiecewiseQuadratic::custom({1.0, 0.0, 0.0},
                                                  {2.0, 0.0, 0.0}))
            .empty());
}

TEST_CASE("polynomial-state ratios agree with direct matching", "[piecewise]") {
  // gamma = 1/2, k = 1: H2/H4 value matching gives -1/6.
  auto g12 = hermite_states(PiecewiseQuadratic::gamma_mod(1, 2), 6);
  REQUIRE(g12.size() == 3);
  CHECK(g12[0].n == 0);
  CHECK(g12[0].E == 0.0);
  CHECK(g12[0].ratio == Catch::Approx(1.0));
  CHECK(g12[1].n == 3);
  CHECK(g12[1].E == Catch::Approx(6.0));
  CHECK(g12[1].left_order == 4);
  CHECK(g12[1].right_order == 2);
  CHECK(g12[1].ratio == Catch::Approx(-1.0 / 6.0));
  CHECK(g12[2].n == 6);
  CHECK(g12[2].E == Catch::Approx(12.0));
  CHECK(g12[2].ratio ==
        Catch::Approx(hermite_poly(4)(0.0) / hermite_poly(8)(0.0)));

  // gamma = 1/3, k = 1 (odd orders): slope matching with the width factor.
  auto g13 = hermite_states(PiecewiseQuadratic::gamma_mod(1, 3), 6);
  REQUIRE(g13.size() >= 3);
  CHECK(g13[1].n == 2);
  CHECK(g13[1].E == Catch::Approx(4.0));
  CHECK(g13[1].left_order == 3);
  CHECK(g13[1].right_order == 1);
  CHECK(g13[1].ratio == Catch::Approx(-std::sqrt(3.0) / 6.0));
  const double via_slopes = std::sqrt(3.0) *
                            hermite_poly(1).derivative()(0.0) /
                            hermite_poly(3).derivative()(0.0);
  CHECK(g13[1].ratio == Catch::Approx(via_slopes));
  // k = 2: value matching again.
  CHECK(g13[2].n == 4);
  CHECK(g13[2].ratio == Catch::Approx(1.0 / 60.0));

  // Step l = 2 lowest polynomial state: H0/H4 gives 1/12.
  auto s8 = hermite_states(PiecewiseQuadratic::step(8.0), 5);
  REQUIRE(!s8.empty());
  CHECK(s8[0].n == 2);
  CHECK(s8[0].E == 0.0);
  CHECK(s8[0].left_order == 4);
  CHECK(s8[0].right_order == 0);
  CHECK(s8[0].ratio == Catch::Approx(1.0 / 12.0));

  // Degenerate step a = 0: the plain oscillator, every level polynomial.
  auto ho = hermite_states(PiecewiseQuadratic::step(0.0), 4);
  REQUIRE(ho.size() == 5);
  for (int n = 0; n <= 4; ++n) {
    CHECK(ho[n].n == n);
    CHECK(ho[n].E == Catch::Approx(2.0 * n));
    CHECK(ho[n].left_order == n);
    CHECK(ho[n].right_order == n);
    CHECK(ho[n].ratio == Catch::Approx(1.0));
  }
}

TEST_CASE("first nonzero polynomial level across the ratio ladder",
          "[piecewise]") {
  // gamma = p'/12 for p' = 1..12: index of the lowest exact level above the
  // ground state.
  const int expect_N[] = {13, 7, 5, 2, 17, 3, 19, 5, 7, 11, 23, 1};
  for (int pp = 1; pp <= 12; ++pp) {
    auto pot = PiecewiseQuadratic::gamma_mod(pp, 12);
    auto hs = hermite_states(pot, 30);
    REQUIRE(hs.size() >= 2);
    CHECK(hs[1].n == expect_N[pp - 1]);
  }
}

TEST_CASE("eigenfunction hygiene: nodes, matching, orthogonality",
          "[piecewise]") {
  const auto check_pot = [](const PiecewiseQuadratic& pot, double e_hi) {
    auto sols = eigenvalues(pot, pot.min_energy() - 0.1, e_hi);
    REQUIRE(sols.size() >= 6);
    sols.resize(6);
    for (int i = 0; i < 6; ++i) {
      CHECK(sols[i].nodes == i);
      CHECK(node_count(pot, sols[i]) == i);
      CHECK(matching_residual(pot, sols[i]) < 1e-9);
    }
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) {
        const double ov = overlap(pot, sols[i], sols[j]);
        if (i == j)
          CHECK(ov == Catch::Approx(1.0).margin(1e-6));
        else
          CHECK(std::abs(ov) < 1e-6);
      }
    // Sign convention: positive leftmost lobe, so the nodeless ground state
    // is positive wherever it is visibly nonzero.
    CHECK(eigenfunction(pot, sols[0], -0.8) > 0.0);
    CHECK(eigenfunction(pot, sols[0], 0.6) > 0.0);
  };
  check_pot(PiecewiseQuadratic::gamma_mod(1, 2), 11.0);
  check_pot(PiecewiseQuadratic::step(2.0), 10.0);
  check_pot(PiecewiseQuadratic::step_ramp(1.5, -std::sqrt(2.0)), 8.5);
}

TEST_CASE("level spacings stay near the oscillator gap", "[piecewise]") {
  // Slope-modulated wells alternate their gaps around 2 within (1.7, 2.3).
  for (auto [p, q] : {std::pair{1, 2}, std::pair{1, 3}}) {
    auto pot = PiecewiseQuadratic::gamma_mod(p, q);
    auto es = energies(eigenvalues(pot, pot.min_energy() - 0.1, 12.5));
    REQUIRE(es.size() >= 6);
    for (std::size_t i = 0; i + 1 < es.size(); ++i) {
      CHECK(es[i + 1] - es[i] > 1.7);
      CHECK(es[i + 1] - es[i] < 2.3);
    }
  }
  // The a = 2 step: same band above the ground state; the first gap is
  // stretched by the deepened well and sits at its own pinned value.
  auto st = PiecewiseQuadratic::step(2.0);
  auto es = energies(eigenvalues(st, st.min_energy() - 0.1, 11.5));
  REQUIRE(es.size() == 7);
  CHECK(es[1] - es[0] == Catch::Approx(2.4062234).margin(1e-6));
  for (std::size_t i = 1; i + 1 < es.size(); ++i) {
    CHECK(es[i + 1] - es[i] > 1.7);
    CHECK(es[i + 1] - es[i] < 2.3);
  }
}

TEST_CASE("lowest-count helper and window behavior", "[piecewise]") {
  auto pot = PiecewiseQuadratic::gamma_mod(5, 6);
  auto sols = lowest_eigenvalues(pot, 4);
  REQUIRE(sols.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(sols[i].nodes == i);
  for (int i = 0; i + 1 < 4; ++i) CHECK(sols[i].E < sols[i + 1].E);

  // Empty window: no states, no error.
  auto none = eigenvalues(pot, 0.3, 1.2);
  CHECK(none.empty());

  // k = 0 polynomial ground state of every gamma well sits at E = 0 exactly.
  CHECK(std::abs(sols[0].E) < 1e-9);
  REQUIRE(sols[0].hermite.has_value());
  CHECK(sols[0].hermite->left_order == 0);
  CHECK(sols[0].hermite->right_order == 0);
}
