#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "aqc/oscillator.hpp"
#include "aqc/predictions.hpp"

using namespace aqc;

// reference values from an independent 30-digit evaluation
namespace ref {
constexpr double delta_F = -0.891221916874837;
constexpr double q1 = 0.761594155955765;
constexpr double hw_T_chi1 = 1.31303528549933;
constexpr double s_r1_chi05 = 0.287871787926717;
constexpr double mapped_4 = 2.42612263885053;
constexpr double delta_E = 1.89636167648567;
constexpr double dE_plus = 0.471517764685769;
constexpr double dE_minus = -3.63212055882856;
constexpr double W_q = 2.05181916175716;
constexpr double ratio = 16.2417257317875;
}  // namespace ref

TEST(FreeEnergy, Values) {
  EXPECT_NEAR(free_energy_change({1.0, 2.0, 1.0}), ref::delta_F, 1e-14);
  EXPECT_DOUBLE_EQ(free_energy_change({1.5, 1.5, 0.7}), 0.0);
  EXPECT_NEAR(free_energy_change({1.0, 2.0, 1e8}), 0.0, 1e-7);
  // large E/kT stays finite
  EXPECT_NEAR(free_energy_change({1000.0, 2000.0, 1.0}), -1000.0, 1e-9);
}

TEST(QFactor, LimitsAndMonotone) {
  EXPECT_EQ(q_factor(0.0), 1.0);
  EXPECT_NEAR(q_factor(1e-9), 1.0, 1e-12);
  EXPECT_NEAR(q_factor(1.0), ref::q1, 1e-15);
  // tanh(100) rounds to 1, so compare through the exact margin 1e-2 - q(100)
  EXPECT_LE(q_factor(100.0), 1e-2);
  EXPECT_GT(2.0 / (100.0 * (std::exp(200.0) + 1.0)), 0.0);
  double prev = 1.0;
  for (int k = 1; k <= 2000; ++k) {
    double q = q_factor(k * 0.01);
    EXPECT_LT(q, prev);
    prev = q;
  }
}

TEST(ThermalSplit, Values) {
  auto t = thermal_frequency_split(FockSpace(16, 2.0, 1.0));  // chi = 1
  EXPECT_NEAR(t.hbar_omega_T, ref::hw_T_chi1, 1e-13);
  EXPECT_DOUBLE_EQ(t.vacuum_part, 1.0);
  EXPECT_NEAR(t.thermal_part + t.vacuum_part, t.hbar_omega_T, 1e-15);
  auto hot = thermal_frequency_split(FockSpace(16, 2e-3, 1.0));  // chi = 1e-3
  EXPECT_NEAR(hot.hbar_omega_T, 1.0, 1e-4);
}

TEST(ThermalSplit, EqualsThermalMeanEnergy) {
  for (double chi : {0.05, 0.3, 1.0, 2.5}) {
    FockSpace s(512, 1.0, 0.5 / chi);
    long double num = 0, den = 0;
    for (int n = 511; n >= 0; --n) {
      long double w = std::exp(-2.0L * chi * (n + 0.5L));
      num += (n + 0.5L) * w;
      den += w;
    }
    EXPECT_NEAR(thermal_frequency_split(s).hbar_omega_T, double(num / den), 1e-8 * double(num / den));
  }
}

TEST(Coherent, PairMapAndDeltaE) {
  EXPECT_EQ(coherent_pair_map(cplx(1.0, 2.0), 0.0), cplx(1.0, 2.0));
  EXPECT_NEAR(coherent_pair_map(4.0, 0.5).real(), ref::mapped_4, 1e-14);
  EXPECT_NEAR(coherent_delta_E(2.0, 1.0, 0.5, 1.0), ref::delta_E, 1e-14);
  EXPECT_DOUBLE_EQ(coherent_delta_E(2.0, 2.0, 0.5, 1.0), 0.0);
  EXPECT_NEAR(coherent_delta_E(3.0, 1.0, 1e-12, 1.0), 0.0, 1e-10);
}

TEST(Coherent, DeltaEMatchesNumericEffectivePotential) {
  FockSpace s(128, 1.0, 1.0);
  double num = effective_potential(s, prepare_state(s, Coherent{2.0})) -
               effective_potential(s, prepare_state(s, Coherent{1.0}));
  EXPECT_NEAR(num, ref::delta_E, 1e-12);
}

TEST(Coherent, QuantumWork) {
  auto w = quantum_work(2.0, 1.0, 0.5, 1.0);
  EXPECT_NEAR(w.delta_E_plus, ref::dE_plus, 1e-14);
  EXPECT_NEAR(w.delta_E_minus, ref::dE_minus, 1e-14);
  EXPECT_NEAR(w.W_q, ref::W_q, 1e-14);
  EXPECT_NEAR(q_factor(0.5) * w.W_q, ref::delta_E, 1e-14);
  EXPECT_DOUBLE_EQ(quantum_work(1.5, -1.5, 0.3, 1.0).W_q, 0.0);
}

TEST(Coherent, IdentityOnRandomDraws) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0), uc(0.01, 3.0), uh(0.2, 3.0);
  for (int k = 0; k < 1000; ++k) {
    cplx ai(u(rng), u(rng)), af(u(rng), u(rng));
    double chi = uc(rng), hw = uh(rng), kT = hw / (2.0 * chi);
    double dE = coherent_delta_E(ai, af, chi, kT);
    double rhs = q_factor(chi) * quantum_work(ai, af, chi, hw).W_q;
    EXPECT_NEAR(dE, rhs, 1e-12 * std::max(1.0, std::abs(dE)));
  }
}

TEST(Squeezed, ReducesToCoherent) {
  auto m = squeezed_pair_map(cplx(1.5, -0.5), 0.0, 0.4);
  EXPECT_DOUBLE_EQ(m.s, 0.0);
  EXPECT_NEAR(std::abs(m.mu - coherent_pair_map(cplx(1.5, -0.5), 0.4)), 0.0, 1e-15);
  EXPECT_NEAR(m.Z_tilde, coherent_Z_tilde(cplx(1.5, -0.5), 0.4), 1e-15);
}

TEST(Squeezed, SqueezeMap) {
  EXPECT_NEAR(squeezed_pair_map(0.0, 1.0, 0.5).s, ref::s_r1_chi05, 1e-14);
}

TEST(Squeezed, RealDisplacementClosedForm) {
  for (double a : {-3.0, 0.0, 0.7, 2.0})
    for (double r : {-1.2, -0.4, 0.5, 1.5})
      for (double chi : {0.1, 0.7, 2.0})
        EXPECT_NEAR(squeezed_pair_map(a, r, chi).Z_tilde / squeezed_Z_tilde_real(a, r, chi), 1.0, 1e-12);
}

TEST(Squeezed, DualityAlphaToIAlpha) {
  for (double chi : {0.05, 0.3, 0.9, 2.0}) {
    for (double r : {-1.0, 0.0, 1.0}) {
      double qp = squeezed_delta_E(2.0, 1.0, r, chi, 0.5 / chi) / squeezed_quantum_work(2.0, 1.0, r, chi, 1.0);
      double qm = squeezed_delta_E(cplx(0, 2.0), cplx(0, 1.0), -r, chi, 0.5 / chi) /
                  squeezed_quantum_work(cplx(0, 2.0), cplx(0, 1.0), -r, chi, 1.0);
      EXPECT_NEAR(qp, qm, 1e-10);
    }
  }
}

TEST(Squeezed, ClassicalLimit) {
  for (double r : {-1.0, 0.0, 1.0}) {
    double chi = 1e-5;
    double q = squeezed_delta_E(2.0, 1.0, r, chi, 0.5 / chi) / squeezed_quantum_work(2.0, 1.0, r, chi, 1.0);
    EXPECT_NEAR(q, 1.0, 1e-3);
  }
}

TEST(Cat, Eta) {
  EXPECT_DOUBLE_EQ(cat_eta(0.0), 1.0);
  EXPECT_NEAR(cat_eta(0.5), std::exp(-0.5 * (1.0 - std::exp(-1.0))), 1e-15);
}

TEST(Cat, SingleTermMatchesCoherent) {
  auto m = cat_pair_map({{1.0, cplx(1.2, 0.3)}}, 0.6);
  EXPECT_NEAR(m.Z_tilde, coherent_Z_tilde(cplx(1.2, 0.3), 0.6), 1e-14);
  ASSERT_EQ(m.mapped_terms.size(), 1u);
  EXPECT_NEAR(std::abs(m.mapped_terms[0].alpha - cplx(1.2, 0.3) * std::exp(-0.6)), 0.0, 1e-15);
}

TEST(Cat, ZeroChiUnchanged) {
  auto m = cat_pair_map(symmetric_cat(2.0).terms, 0.0);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(m.mapped_terms[k].weight, symmetric_cat(2.0).terms[k].weight);
    EXPECT_EQ(m.mapped_terms[k].alpha, symmetric_cat(2.0).terms[k].alpha);
  }
}

TEST(Cat, SymmetricCatZTildeMatchesNumeric) {
  FockSpace s(128, 1.0, 1.0);
  auto st = prepare_state(s, symmetric_cat(2.0));
  auto g = apply_gibbs_weight(s, st);
  EXPECT_NEAR(cat_pair_map(symmetric_cat(2.0).terms, 0.5).Z_tilde, g.Z_tilde, 1e-9 * g.Z_tilde);
}

TEST(Prediction, Ratio) {
  TwoLevelSystem sys{1.0, 2.0, 1.0};
  EXPECT_NEAR(predicted_ratio(sys, ref::delta_E), ref::ratio, 1e-12);
  EXPECT_DOUBLE_EQ(predicted_ratio({1.0, 1.0, 1.0}, 0.0), 1.0);
  EXPECT_NEAR(predicted_ratio(sys, 0.0), std::exp(-ref::delta_F), 1e-13);
}

TEST(Prediction, ThermalFormAgrees) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-4.0, 4.0), uc(0.05, 2.0);
  for (int k = 0; k < 200; ++k) {
    double chi = uc(rng), kT = 0.5 / chi;
    TwoLevelSystem sys{1.0 + u(rng) * 0.2, 2.0 + u(rng) * 0.2, kT};
    cplx ai(u(rng), u(rng)), af(u(rng), u(rng));
    auto p = coherent_prediction(sys, ai, af, 1.0);
    ASSERT_TRUE(p.W_q.has_value());
    double hw_T = thermal_frequency_split(FockSpace(8, 1.0, kT)).hbar_omega_T;
    EXPECT_NEAR(p.predicted_ratio / predicted_ratio_thermal(sys, *p.W_q, hw_T), 1.0, 1e-12);
  }
}

TEST(Prediction, UndefinedQWhenWorkVanishes) {
  auto p = coherent_prediction({1.0, 2.0, 1.0}, -6.0, 6.0, 1.0);
  EXPECT_FALSE(p.q.has_value());
  EXPECT_NEAR(p.predicted_ratio, std::exp(-ref::delta_F), 1e-12);
  auto q = coherent_prediction({1.0, 2.0, 1.0}, 2.0, 1.0, 1.0);
  ASSERT_TRUE(q.q.has_value());
  EXPECT_NEAR(*q.q, q_factor(0.5), 1e-14);
}

TEST(GibbsMaps, ClosedFormsMatchNumericWeighting) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0), uc(0.05, 2.0);
  for (int k = 0; k < 30; ++k) {
    cplx alpha(4.0 * u(rng), 4.0 * u(rng));
    double r = 1.5 * u(rng), chi = uc(rng);
    FockSpace s(384, 1.0, 0.5 / chi);

    auto sq = prepare_state(s, SqueezedDisplaced{alpha, r});
    auto g = apply_gibbs_weight(s, sq);
    auto m = squeezed_pair_map(alpha, r, chi);
    EXPECT_GT(fidelity(g.weighted, prepare_state(s, SqueezedDisplaced{m.mu, m.s})), 1.0 - 1e-8) << k;
    EXPECT_NEAR(m.Z_tilde / g.Z_tilde, 1.0, 1e-8) << k;

    Cat cat = one_sided_cat(alpha, cplx(1.0, 0.5));
    auto gc = apply_gibbs_weight(s, prepare_state(s, cat));
    auto cm = cat_pair_map(cat.terms, chi);
    EXPECT_GT(fidelity(gc.weighted, prepare_state(s, Cat{cm.mapped_terms})), 1.0 - 1e-8) << k;
    EXPECT_NEAR(cm.Z_tilde / gc.Z_tilde, 1.0, 1e-8) << k;
  }
}
