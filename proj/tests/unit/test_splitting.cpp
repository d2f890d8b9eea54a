#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "aqc/error.hpp"
#include "aqc/splitting.hpp"

using namespace aqc;

TEST(Profile, FlatEndsValues) {
  SplittingProfile p = FlatEnds{1.0, 2.0, -4.0, 4.0};
  EXPECT_DOUBLE_EQ(profile_value(p, -10.0), 1.0);
  EXPECT_DOUBLE_EQ(profile_value(p, -4.0), 1.0);
  EXPECT_DOUBLE_EQ(profile_value(p, 0.0), 1.5);
  EXPECT_DOUBLE_EQ(profile_value(p, 4.0), 2.0);
  EXPECT_DOUBLE_EQ(profile_value(p, 9.0), 2.0);
  auto [ei, ef] = profile_end_values(p);
  EXPECT_EQ(ei, 1.0);
  EXPECT_EQ(ef, 2.0);
}

TEST(Profile, FlatEndsContinuity) {
  SplittingProfile p = FlatEnds{1.0, 2.0, -4.0, 4.0};
  double prev = profile_value(p, -10.0), worst = 0.0;
  const double h = 20.0 / 1e4;
  for (int k = 1; k <= 10000; ++k) {
    double v = profile_value(p, -10.0 + k * h);
    worst = std::max(worst, std::abs(v - prev) - h / 8.0);  // slope 1/8 on the ramp
    prev = v;
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Profile, SinusoidalTroughAndCrest) {
  SplittingProfile p = Sinusoidal{1.0, 2.0, -5.0, 4.0};
  EXPECT_NEAR(profile_value(p, -5.0), 1.0, 1e-15);
  EXPECT_NEAR(profile_value(p, 4.0), 2.0, 1e-15);
  EXPECT_NEAR(profile_value(p, -5.0 - 18.0), 1.0, 1e-14);
  EXPECT_NEAR(profile_value(p, 4.0 + 18.0), 2.0, 1e-14);
}

TEST(Profile, LinearWholeAxis) {
  SplittingProfile p = Linear{1.0, 2.0, -2.0, 2.0};
  EXPECT_DOUBLE_EQ(profile_value(p, 6.0), 3.0);
  EXPECT_DOUBLE_EQ(profile_value(p, -6.0), 0.0);
}

TEST(Profile, TabulatedInterpolationAndRange) {
  SplittingProfile p = Tabulated{{{-1.0, 0.0}, {0.0, 1.0}, {2.0, 3.0}}};
  EXPECT_DOUBLE_EQ(profile_value(p, -0.5), 0.5);
  EXPECT_DOUBLE_EQ(profile_value(p, 1.0), 2.0);
  try {
    profile_value(p, 2.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TabulatedOutOfRange);
  }
}

TEST(Profile, TabulatedOutsideWindowRejected) {
  FockSpace s(32, 1.0, 1.0);
  SplittingProfile p = Tabulated{{{-3.0, 0.0}, {3.0, 1.0}}};
  try {
    profile_operator(s, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TabulatedOutOfRange);
  }
  EXPECT_THROW(profile_operator(s, p, OperatorMethod::SpectralCalculus), Error);
}

TEST(Profile, Validation) {
  EXPECT_THROW(validate_profile(FlatEnds{1.0, 2.0, 4.0, -4.0}), Error);
  EXPECT_THROW(validate_profile(Sinusoidal{1.0, 2.0, 1.0, 1.0}), Error);
  EXPECT_THROW(validate_profile(Tabulated{{{0.0, 1.0}, {0.0, 2.0}}}), Error);
  EXPECT_THROW(validate_profile(FlatEnds{NAN, 2.0, -1.0, 1.0}), Error);
  EXPECT_NO_THROW(validate_profile(Linear{1.0, 2.0, -1.0, 1.0}));
}

TEST(ProfileOperator, ConstantIsIdentity) {
  FockSpace s(48, 1.0, 1.0);
  for (auto m : {OperatorMethod::Galerkin, OperatorMethod::SpectralCalculus}) {
    auto op = profile_operator(s, Linear{1.5, 1.5, -1.0, 1.0}, m);
    EXPECT_LT((op.entries - 1.5 * ComplexMatrix::Identity(48, 48)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ProfileOperator, LinearIsScaledPosition) {
  FockSpace s(64, 1.0, 1.0);
  auto ops = build_operators(s);
  for (auto m : {OperatorMethod::Galerkin, OperatorMethod::SpectralCalculus}) {
    auto op = profile_operator(s, Linear{0.0, 0.6, 0.0, 2.0}, m);  // slope 0.3
    EXPECT_LT((op.entries - 0.3 * ops.position.entries).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ProfileOperator, PolynomialMatchesOperatorPolynomial) {
  FockSpace s(64, 1.0, 1.0);
  auto ops = build_operators(s);
  ComplexMatrix x = ops.position.entries;
  ComplexMatrix expect = 0.2 * ComplexMatrix::Identity(64, 64) - 0.5 * x + 0.3 * x * x + 0.05 * x * x * x;
  auto f = [](double v) { return 0.2 - 0.5 * v + 0.3 * v * v + 0.05 * v * v * v; };
  auto spec = function_of_position(s, f, {}, OperatorMethod::SpectralCalculus);
  // compare on the lower half of the spectrum, away from the truncation edge
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x);
  ComplexMatrix V = es.eigenvectors();
  std::vector<int> low;
  for (int k = 0; k < 64; ++k)
    if (std::abs(es.eigenvalues()[k]) < 2.5) low.push_back(k);
  ASSERT_GE(low.size(), 8u);
  ComplexMatrix Vl(64, Eigen::Index(low.size()));
  for (std::size_t k = 0; k < low.size(); ++k) Vl.col(Eigen::Index(k)) = V.col(low[k]);
  ComplexMatrix d = Vl.adjoint() * (spec.entries - expect) * Vl;
  EXPECT_LT(d.cwiseAbs().maxCoeff(), 1e-9);
  // the quadrature route is exact for polynomials below the truncation edge
  auto gal = function_of_position(s, f, {}, OperatorMethod::Galerkin);
  EXPECT_LT((gal.entries - expect).topLeftCorner(32, 32).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ProfileOperator, CoherentExpectationQuadratureOracle) {
  // <alpha|E(X)|alpha> = int E(x) |psi_alpha(x)|^2 dx with a Gaussian of variance 1/4 about -6
  FockSpace s(128, 1.0, 1.0);
  SplittingProfile p = FlatEnds{1.0, 2.0, -4.0, 4.0};
  auto op = profile_operator(s, p);
  auto st = prepare_state(s, Coherent{-6.0});
  double got = (st.amplitudes.adjoint() * op.entries * st.amplitudes)(0).real();
  auto density = [&](double x) {
    return profile_value(p, x) * std::sqrt(2.0 / std::numbers::pi) * std::exp(-2.0 * (x + 6.0) * (x + 6.0));
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double oracle = GK::integrate(density, -20.0, -4.0, 10, 1e-14) + GK::integrate(density, -4.0, 4.0, 10, 1e-14) +
                  GK::integrate(density, 4.0, 20.0, 10, 1e-14);
  EXPECT_NEAR(got, oracle, 1e-12);
  EXPECT_NEAR(got, 1.0, 1e-6);
}

TEST(ProfileOperator, DimensionDoublingStable) {
  SplittingProfile p = FlatEnds{1.0, 2.0, -4.0, 4.0};
  FockSpace s(128, 1.0, 1.0);
  auto st = prepare_state(s, Coherent{-3.0});
  auto st2 = prepare_state(s.with_dim(256), Coherent{-3.0});
  double a = (st.amplitudes.adjoint() * profile_operator(s, p).entries * st.amplitudes)(0).real();
  double b = (st2.amplitudes.adjoint() * profile_operator(s.with_dim(256), p).entries * st2.amplitudes)(0).real();
  EXPECT_NEAR(a, b, 1e-10);
}

TEST(JointHamiltonian, ZeroProfileGivesOscillator) {
  FockSpace s(32, 1.0, 1.0);
  auto j = joint_hamiltonian(s, Linear{0.0, 0.0, -1.0, 1.0});
  auto ops = build_operators(s);
  EXPECT_LT((j.H_e.entries - ops.H_B.entries).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((j.H_g.entries - ops.H_B.entries).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(JointHamiltonian, BlockDifferenceIsTwiceProfile) {
  FockSpace s(64, 1.0, 1.0);
  SplittingProfile p = FlatEnds{1.0, 2.0, -4.0, 4.0};
  auto j = joint_hamiltonian(s, p);
  auto e = profile_operator(s, p);
  EXPECT_LT((j.H_e.entries - j.H_g.entries - 2.0 * e.entries).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_TRUE(j.H_e.hermitian);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(j.H_e.entries);
  EXPECT_EQ(es.eigenvalues().size(), 64);
  EXPECT_EQ(es.info(), Eigen::Success);
}
