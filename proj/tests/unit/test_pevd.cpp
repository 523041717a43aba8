#include <algorithm>

#include <gtest/gtest.h>

#include "bbsd/covariance.hpp"
#include "bbsd/error.hpp"
#include "bbsd/pevd.hpp"
#include "bbsd/signalgen.hpp"
#include "helpers.hpp"

namespace bbsd {
namespace {

// Small para-Hermitian test input: A A^P + I for a random 4x2 order-3 A.
LaurentMatrix small_csd(std::uint64_t seed) {
  Rng rng(seed);
  const auto a = testing::random_laurent(4, 2, 0, 3, rng);
  return multiply(a, paraconjugate(a)) + LaurentMatrix::constant(CMatrix::Identity(4, 4));
}

TEST(Pevd, AlreadyDiagonalNeedsNoIterations) {
  const auto r = LaurentMatrix::constant(2.5 * CMatrix::Identity(3, 3));
  const auto evd = pevd(r);
  EXPECT_EQ(evd.iterations, 0);
  EXPECT_EQ(evd.residual, 0.0);
  EXPECT_EQ(evd.status, PevdStatus::converged);
  EXPECT_TRUE(evd.Q == LaurentMatrix::identity(3));
  EXPECT_TRUE(evd.Lambda == r);
}

TEST(Pevd, ConstantTwoByTwoMatchesClosedForm) {
  CMatrix c(2, 2);
  c << 2.0, 1.0, 1.0, 2.0;
  const auto evd = pevd(LaurentMatrix::constant(c));
  ASSERT_EQ(evd.Lambda.num_lags(), 1);
  const CMatrix d = evd.Lambda.lag(0);
  EXPECT_NEAR(d(0, 0).real(), 3.0, 1e-12);
  EXPECT_NEAR(d(1, 1).real(), 1.0, 1e-12);
  EXPECT_LT(std::abs(d(0, 1)), 1e-12);

  // Eigenvectors (1, 1)/sqrt2 and (1, -1)/sqrt2 up to phase.
  const CMatrix q = evd.Q.at(0);
  EXPECT_NEAR(std::abs(q(0, 0)), M_SQRT1_2, 1e-12);
  EXPECT_NEAR(std::abs(q(1, 0)), M_SQRT1_2, 1e-12);
  EXPECT_NEAR(std::abs(q(0, 0) + q(1, 0)), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(q(0, 1) + q(1, 1)), 0.0, 1e-12);
}

TEST(Pevd, ResidualDefinitionOnTwoByTwo) {
  CMatrix c(2, 2);
  c << 2.0, 1.0, 1.0, 2.0;
  EXPECT_DOUBLE_EQ(diagonalisation_residual(LaurentMatrix::constant(c), LaurentMatrix::identity(2)), 0.2);
  EXPECT_EQ(diagonalisation_residual(LaurentMatrix::constant(CMatrix(CMatrix::Identity(2, 2) * 3.0)),
                                     LaurentMatrix::identity(2)),
            0.0);
}

TEST(Pevd, RejectsBadInput) {
  EXPECT_THROW(pevd(LaurentMatrix(2, 3)), DimensionError);
  Rng rng(3);
  EXPECT_THROW(pevd(LaurentMatrix::monomial(rng.complex_normal(3, 3), 1)), std::invalid_argument);
  EXPECT_THROW(diagonalisation_residual(LaurentMatrix::identity(3), LaurentMatrix::identity(2)), DimensionError);
}

TEST(Pevd, IterationLimitIsReportedNotThrown) {
  PevdOptions opts;
  opts.max_iter = 3;
  opts.residual_tol = 0.0;
  const auto evd = pevd(small_csd(4), opts);
  EXPECT_EQ(evd.iterations, 3);
  EXPECT_EQ(evd.status, PevdStatus::max_iterations);
  EXPECT_GT(evd.residual, 0.0);
}

TEST(Pevd, InvariantsOnRandomInput) {
  const auto r = small_csd(5);
  PevdOptions opts;
  opts.residual_tol = 1e-4;
  opts.max_iter = 2000;
  opts.trunc_eps = 1e-9;
  const auto evd = pevd(r, opts);
  EXPECT_EQ(evd.status, PevdStatus::converged);
  EXPECT_LE(evd.residual, 1e-4);
  EXPECT_TRUE(is_paraunitary(evd.Q, 1e-8));
  EXPECT_TRUE(is_parahermitian(evd.Lambda, 1e-12));

  // Lag-0 diagonal real and non-increasing.
  const CMatrix d0 = evd.Lambda.at(0);
  for (Index i = 0; i < d0.rows(); ++i) EXPECT_LT(std::abs(d0(i, i).imag()), 1e-12);
  for (Index i = 1; i < d0.rows(); ++i) EXPECT_GE(d0(i - 1, i - 1).real(), d0(i, i).real());

  // Q^P R Q recomputed from scratch agrees with the tracked Lambda.
  const auto s = multiply(paraconjugate(evd.Q), multiply(r, evd.Q));
  EXPECT_LE((s - evd.Lambda).energy(), 1e-6 * r.energy());

  // Paraunitary transforms preserve energy up to truncation.
  EXPECT_NEAR(evd.Lambda.energy(), r.energy(), 1e-6 * r.energy());

  // Reconstruction error bound.
  const auto back = multiply(evd.Q, multiply(evd.Lambda, paraconjugate(evd.Q)));
  EXPECT_LE(std::sqrt((back - r).energy() / r.energy()), 10.0 * (evd.residual + opts.trunc_eps));
}

TEST(Pevd, ResidualTraceIsNonIncreasing) {
  ScenarioConfig c;
  Rng rng(6);
  const auto model = build_mixing_system(c, rng);
  const auto R = ground_truth_csd(model, c.sigma_v2).first;
  PevdOptions opts;
  opts.max_iter = 400;
  opts.residual_tol = 0.0;
  const auto evd = pevd(R, opts);
  ASSERT_EQ(evd.residual_trace.size(), 401u);
  for (std::size_t i = 1; i < evd.residual_trace.size(); ++i) {
    EXPECT_LE(evd.residual_trace[i], evd.residual_trace[i - 1]) << "iteration " << i;
  }
}

TEST(Partition, TrivialIdentity) {
  const auto evd = pevd(LaurentMatrix::identity(2));
  const auto p = partition(evd, 1);
  EXPECT_EQ(p.L, 1);
  EXPECT_EQ(p.Q_par.at(0), CMatrix::Identity(2, 2).col(0));
  EXPECT_EQ(p.Q_perp.at(0), CMatrix::Identity(2, 2).col(1));
}

TEST(Partition, RangeChecks) {
  const auto evd = pevd(LaurentMatrix::identity(3));
  EXPECT_THROW(partition(evd, 0), DimensionError);
  EXPECT_THROW(partition(evd, 3), DimensionError);
}

TEST(Partition, SubspacesAreOrthogonalAndReassemble) {
  PevdOptions opts;
  opts.residual_tol = 1e-4;
  opts.max_iter = 2000;
  const auto evd = pevd(small_csd(7), opts);
  const auto p = partition(evd, 2);
  EXPECT_EQ(p.Q_perp.cols(), 2);
  const double cross = multiply(paraconjugate(p.Q_perp), p.Q_par).energy();
  EXPECT_LE(cross, 1e-8 * (p.Q_par.energy() + p.Q_perp.energy()));
  EXPECT_TRUE(hconcat(p.Q_par, p.Q_perp) == evd.Q);
}

}  // namespace
}  // namespace bbsd
