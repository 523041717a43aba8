#include <cmath>

#include <gtest/gtest.h>

#include "bbsd/covariance.hpp"
#include "bbsd/error.hpp"
#include "bbsd/pevd.hpp"
#include "bbsd/projection.hpp"
#include "bbsd/signalgen.hpp"
#include "helpers.hpp"

namespace bbsd {
namespace {

// Direct evaluation of s[n] = sum_nu Q^H[-nu] x[n - nu] at input index n.
CVector reference_output(const LaurentMatrix& q, const CMatrix& x, Index n) {
  CVector s = CVector::Zero(q.cols());
  for (int t = q.tau_min(); t <= q.tau_max(); ++t) {
    // Q^P has coefficient Q[t]^H at lag -t, applied to x[n + t].
    s += q.lag(t).adjoint() * x.col(n + t);
  }
  return s;
}

TEST(Project, MatchesDefinitionAndAlignment) {
  Rng rng(1);
  const auto q = random_paraunitary(4, 3, rng).columns(2, 2).delayed(-1);  // lags -1..2
  const CMatrix x = rng.complex_normal(4, 40);
  const auto s = project(q, x);
  EXPECT_EQ(s.valid_from, q.order());
  EXPECT_EQ(s.data.rows(), 2);
  EXPECT_EQ(s.data.cols(), 40 - q.order());
  // Column i uses inputs x[i .. i + order].
  for (Index i = 0; i < s.data.cols(); ++i) {
    const Index n = i - q.tau_min();
    EXPECT_LT((s.data.col(i) - reference_output(q, x, n)).norm(), 1e-12);
  }
}

TEST(Project, RejectsMismatch) {
  Rng rng(2);
  const auto q = random_paraunitary(4, 3, rng).columns(0, 2);
  EXPECT_THROW(project(q, CMatrix::Zero(3, 20)), DimensionError);
  EXPECT_THROW(project(q, CMatrix::Zero(4, 3)), DimensionError);
}

TEST(Project, ConstantProjectionOfWhiteNoise) {
  Rng rng(3);
  const CMatrix u = random_unitary(6, rng);
  const auto q = LaurentMatrix::constant(u.rightCols(2));
  const CMatrix x = rng.complex_normal(6, 100000, 1.5);
  const auto s = project(q, x);
  const CMatrix r = s.data * s.data.adjoint() / static_cast<double>(s.data.cols());
  EXPECT_LE(testing::rel_err(r, 1.5 * CMatrix::Identity(2, 2)), 0.03);
}

TEST(Project, LinearAndNonAmplifying) {
  Rng rng(4);
  const auto q = random_paraunitary(5, 6, rng).columns(3, 2);
  const CMatrix x1 = rng.complex_normal(5, 300);
  const CMatrix x2 = rng.complex_normal(5, 300);
  const Complex a(0.5, -1.0);
  const Complex b(2.0, 0.25);
  const CMatrix lhs = project(q, a * x1 + b * x2).data;
  const CMatrix rhs = a * project(q, x1).data + b * project(q, x2).data;
  EXPECT_LT((lhs - rhs).norm(), 1e-12 * rhs.norm());
  EXPECT_LE(project(q, x1).data.squaredNorm(), x1.squaredNorm() + 1e-10);
}

TEST(Project, SingleToneMatchesFrequencyResponse) {
  Rng rng(5);
  const auto q = random_paraunitary(4, 5, rng).columns(1, 2);
  const double w = 0.7;
  const CVector a = rng.complex_normal(4, 1);
  CMatrix x(4, 200);
  for (Index n = 0; n < x.cols(); ++n) x.col(n) = a * std::polar(1.0, w * static_cast<double>(n));
  const auto s = project(q, x);
  const CVector gain = evaluate_at(paraconjugate(q), w) * a;
  for (Index i = 0; i < s.data.cols(); ++i) {
    const Index n = s.valid_from + i + paraconjugate(q).tau_min();
    EXPECT_LT((s.data.col(i) - gain * std::polar(1.0, w * static_cast<double>(n))).norm(), 1e-8);
  }
}

class DefaultScenarioSubspace : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    Rng rng(6);
    model_ = new SourceModel(build_mixing_system(config(), rng));
    PevdOptions opts;
    opts.max_iter = config().pevd_max_iter;
    opts.residual_tol = config().pevd_residual_tol;
    opts.trunc_eps = config().pevd_trunc_eps;
    const auto evd = pevd(ground_truth_csd(*model_, 1.0).first, opts);
    q_perp_ = new LaurentMatrix(truncate(partition(evd, 7).Q_perp, config().projection_trunc_eps));
  }
  static void TearDownTestSuite() {
    delete model_;
    delete q_perp_;
  }
  static ScenarioConfig config() { return ScenarioConfig{}; }

  static SourceModel* model_;
  static LaurentMatrix* q_perp_;
};

SourceModel* DefaultScenarioSubspace::model_ = nullptr;
LaurentMatrix* DefaultScenarioSubspace::q_perp_ = nullptr;

TEST_F(DefaultScenarioSubspace, H0SyndromeIsWhite) {
  Rng rng(7);
  const auto s = project(*q_perp_, generate_measurements(*model_, config(), false, 100000, rng));
  const auto r = estimate_csd(s.data, 5);
  const CMatrix eye = CMatrix::Identity(3, 3);
  for (int t = -5; t <= 5; ++t) {
    const CMatrix expect = t == 0 ? eye : CMatrix::Zero(3, 3);
    EXPECT_LE((r.at(t) - expect).norm() / eye.norm(), 0.05) << "lag " << t;
  }
}

TEST_F(DefaultScenarioSubspace, TransientRaisesSyndromePower) {
  Rng r0 = Rng::derive(8, {0});
  Rng r1 = Rng::derive(8, {1});
  const auto s0 = project(*q_perp_, generate_measurements(*model_, config(), false, 10000, r0));
  const auto s1 = project(*q_perp_, generate_measurements(*model_, config(), true, 10000, r1));
  EXPECT_GT(s1.data.squaredNorm() / static_cast<double>(s1.data.cols()),
            s0.data.squaredNorm() / static_cast<double>(s0.data.cols()));
}

}  // namespace
}  // namespace bbsd
