#include "bbsd/lrt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bbsd/covariance.hpp"
#include "bbsd/error.hpp"

namespace bbsd {

namespace {

void require_hermitian_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(what) + ": matrix must be square");
}

void require_invertible(const CMatrix& a, const char* name, double& cond_out) {
  cond_out = condition_number(a);
  if (!(cond_out <= singular_condition_limit())) {
    throw IllConditionedError(std::string(name) + " is numerically singular (condition number " +
                                  std::to_string(cond_out) + ")",
                              cond_out);
  }
}

double log_abs_det(const Eigen::PartialPivLU<CMatrix>& lu) {
  double s = 0.0;
  const CMatrix& f = lu.matrixLU();
  for (Index i = 0; i < f.rows(); ++i) s += std::log(std::abs(f(i, i)));
  return s;
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

CMatrix direct_solve(const CMatrix& R0, const CMatrix& R01) {
  const Eigen::PartialPivLU<CMatrix> lu0(R0);
  const Eigen::PartialPivLU<CMatrix> lu01(R01);
  const CMatrix z = lu0.solve(R01 - R0);  // R0^{-1} R1
  return hermitian_part(lu01.solve(z.adjoint()).adjoint());
}

void require_same_square(const CMatrix& R0, const CMatrix& R01, const char* what) {
  require_hermitian_square(R0, what);
  if (R01.rows() != R0.rows() || R01.cols() != R0.cols()) throw DimensionError(std::string(what) + ": R0 and R01 differ in size");
}

LrtDetector assemble(const CMatrix& A, const CMatrix& R0, const CMatrix& R01, double eigen_floor) {
  LrtDetector det;
  det.K = R0.rows();
  det.cond_R0 = condition_number(R0);
  det.cond_R01 = condition_number(R01);
  det.logdet_R0 = log_abs_det(Eigen::PartialPivLU<CMatrix>(R0));
  det.logdet_R01 = log_abs_det(Eigen::PartialPivLU<CMatrix>(R01));
  det.W = whitener_from(A, eigen_floor);
  return det;
}

}  // namespace

double singular_condition_limit() { return 1e-3 / std::numeric_limits<double>::epsilon(); }

CVector stack_snapshots(const CMatrix& stream, Index n, int T) {
  if (T < 1 || n < T - 1 || n >= stream.cols()) {
    throw std::out_of_range("stack_snapshots: window of " + std::to_string(T) + " ending at " + std::to_string(n) +
                            " not available");
  }
  const Index d = stream.rows();
  CVector y(d * T);
  for (int i = 0; i < T; ++i) y.segment(i * d, d) = stream.col(n - i);
  return y;
}

CMatrix lrt_matrix_direct(const CMatrix& R0, const CMatrix& R01) {
  require_same_square(R0, R01, "lrt_matrix_direct");
  double c0 = 0.0;
  double c1 = 0.0;
  require_invertible(R0, "R0", c0);
  require_invertible(R01, "R0 + R1", c1);
  return direct_solve(R0, R01);
}

CMatrix lrt_matrix_woodbury(const CMatrix& R0, const TransientFactor& Ht) {
  require_hermitian_square(R0, "lrt_matrix_woodbury");
  if (Ht.H_t.rows() != R0.rows()) throw DimensionError("lrt_matrix_woodbury: factor height must match R0");
  double c0 = 0.0;
  require_invertible(R0, "R0", c0);
  const Eigen::PartialPivLU<CMatrix> lu0(R0);
  const CMatrix g = lu0.solve(Ht.H_t);  // R0^{-1} H
  const Index r = Ht.H_t.cols();
  const CMatrix inner = CMatrix::Identity(r, r) + Ht.H_t.adjoint() * g;
  return hermitian_part(g * Eigen::PartialPivLU<CMatrix>(inner).solve(g.adjoint()));
}

CMatrix lrt_matrix_white(double sigma_v2, const TransientFactor& Ht) {
  if (!(sigma_v2 > 0.0)) throw std::invalid_argument("lrt_matrix_white: sigma_v2 must be positive");
  const CMatrix& h = Ht.H_t;
  const Index r = h.cols();
  const CMatrix inner = sigma_v2 * CMatrix::Identity(r, r) + h.adjoint() * h;
  return hermitian_part(h * Eigen::LLT<CMatrix>(inner).solve(h.adjoint())) / sigma_v2;
}

CMatrix whitener_from(const CMatrix& A, double eigen_floor) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(A);
  const RVector& lam = es.eigenvalues();
  const Index k = A.rows();
  const double top = k > 0 ? lam(k - 1) : 0.0;
  if (!(top > 0.0)) return CMatrix(0, k);
  const double cut = eigen_floor * top;
  Index keep = 0;
  for (Index i = 0; i < k; ++i) keep += (lam(i) > cut && lam(i) > 0.0) ? 1 : 0;
  CMatrix w(keep, k);
  Index row = 0;
  for (Index i = k - 1; i >= 0 && row < keep; --i) {
    if (lam(i) > cut && lam(i) > 0.0) w.row(row++) = std::sqrt(lam(i)) * es.eigenvectors().col(i).adjoint();
  }
  return w;
}

LrtDetector build_detector(const CMatrix& R0, const CMatrix& R01, double eigen_floor) {
  return assemble(lrt_matrix_direct(R0, R01), R0, R01, eigen_floor);
}

LrtDetector build_detector_unchecked(const CMatrix& R0, const CMatrix& R01, double eigen_floor) {
  require_same_square(R0, R01, "build_detector_unchecked");
  return assemble(direct_solve(R0, R01), R0, R01, eigen_floor);
}

LrtDetector build_detector_woodbury(const CMatrix& R0, const TransientFactor& Ht, double eigen_floor) {
  const CMatrix A = lrt_matrix_woodbury(R0, Ht);
  return assemble(A, R0, R0 + Ht.H_t * Ht.H_t.adjoint(), eigen_floor);
}

TransientFactor transient_factor(const LaurentMatrix& h, int T, double sigma_t, FactorSupport support) {
  if (h.cols() != 1) throw DimensionError("transient_factor: h must be a single column");
  if (T < 1) throw DimensionError("transient_factor: T must be at least 1");
  const Index d = h.rows();
  const int span = h.order();
  const int ncols = support == FactorSupport::full ? T + span : T;
  CMatrix f = CMatrix::Zero(d * T, ncols);
  for (int c = 0; c < ncols; ++c) {
    for (int i = 0; i < T; ++i) {
      const int k = h.tau_min() + c - i;
      if (h.has_lag(k)) f.block(i * d, c, d, 1) = sigma_t * h.lag(k);
    }
  }
  return {std::move(f)};
}

double test_statistic(const LrtDetector& det, const CVector& y) {
  if (y.size() != det.K) throw DimensionError("test_statistic: vector length does not match detector");
  if (det.W.rows() == 0) return 0.0;
  return (det.W * y).norm();
}

RVector test_statistics(const LrtDetector& det, const CMatrix& Y) {
  if (Y.rows() != det.K) throw DimensionError("test_statistics: vector length does not match detector");
  if (det.W.rows() == 0) return RVector::Zero(Y.cols());
  const CMatrix z = det.W * Y;
  return z.colwise().norm().transpose();
}

ConditionBounds condition_bounds(const SourceModel& model, const ScenarioConfig& config) {
  ConditionBounds b;
  b.sigma_s2 = per_sensor_power(model.H).maxCoeff();
  b.sigma_t2 = model.sigma_t2 * per_sensor_power(model.h_t).maxCoeff();
  b.measurement = b.sigma_s2 / config.sigma_v2;
  b.subspace_h0 = 1.0;
  b.subspace_h1 = (b.sigma_t2 + config.sigma_v2) / config.sigma_v2;
  return b;
}

}  // namespace bbsd
