#pragma once

#include "bbsd/polymat.hpp"
#include "bbsd/signalgen.hpp"

namespace bbsd {

/**
 * Precomputed likelihood-ratio test for y ~ CN(0, R0) against
 * y ~ CN(0, R0 + R1).
 *
 * With A = R0^{-1} - (R0 + R1)^{-1} = Q Lambda Q^H, the statistic is
 * ||Lambda^{1/2} Q^H y||. W holds the rows sqrt(lambda_k) q_k^H for the
 * eigenvalues kept above the floor, so the statistic is ||W y||.
 */
struct LrtDetector {
  Index K = 0;
  CMatrix W;  ///< K' x K, K' <= K
  /// log|det| of R0 and R0 + R1 (complex Gaussian normalisation).
  double logdet_R0 = 0.0;
  double logdet_R01 = 0.0;
  double cond_R0 = 1.0;
  double cond_R01 = 1.0;
};

/// Tall factor with H_t H_t^H = R1 (exactly for full support, see transient_factor).
struct TransientFactor {
  CMatrix H_t;
};

enum class FactorSupport {
  /// T columns: the newest T samples of the transient source. Rank <= T.
  windowed,
  /// T + order(h) columns: every source sample that reaches the window.
  full,
};

/// Largest tolerated condition number before a covariance counts as singular.
double singular_condition_limit();

/// y = [x^T[n], x^T[n-1], ..., x^T[n-T+1]]^T. Throws std::out_of_range if n < T - 1 or n >= N.
CVector stack_snapshots(const CMatrix& stream, Index n, int T);

/// A via two LU solves: A = R0^{-1} (R01 - R0) R01^{-1}. Throws
/// IllConditionedError if R0 or R01 is numerically singular.
CMatrix lrt_matrix_direct(const CMatrix& R0, const CMatrix& R01);

/// Woodbury form A = R0^{-1} H (I + H^H R0^{-1} H)^{-1} H^H R0^{-1}; the only
/// inner inverse is r x r with r = H.cols().
CMatrix lrt_matrix_woodbury(const CMatrix& R0, const TransientFactor& Ht);

/// R0 = sigma_v2 I specialisation: A = H (sigma_v2 I + H^H H)^{-1} H^H / sigma_v2.
CMatrix lrt_matrix_white(double sigma_v2, const TransientFactor& Ht);

/// Whitener from a Hermitian A, dropping eigenvalues below eigen_floor * max.
CMatrix whitener_from(const CMatrix& A, double eigen_floor);

LrtDetector build_detector(const CMatrix& R0, const CMatrix& R01, double eigen_floor = 1e-12);
/// Same as build_detector without the conditioning guard. Used to keep
/// evaluating detectors built from singular estimates; the result may be
/// meaningless but is always finite-or-NaN, never an exception.
LrtDetector build_detector_unchecked(const CMatrix& R0, const CMatrix& R01, double eigen_floor = 1e-12);
LrtDetector build_detector_woodbury(const CMatrix& R0, const TransientFactor& Ht, double eigen_floor = 1e-12);

/// Block convolution matrix of sigma_t h(z) over a window of T snapshots.
///
/// Column c carries source sample u[n - tau_min(h) - c]; block i of that
/// column is sigma_t h[tau_min(h) + c - i]. With full support H_t H_t^H is
/// block_toeplitz(sigma_t^2 h h^P, T) exactly; the windowed factor keeps the
/// first T columns only.
TransientFactor transient_factor(const LaurentMatrix& h, int T, double sigma_t,
                                 FactorSupport support = FactorSupport::windowed);

double test_statistic(const LrtDetector& det, const CVector& y);

/// ||W y_k|| for every column y_k of Y.
RVector test_statistics(const LrtDetector& det, const CMatrix& Y);

/// Lower bounds on covariance condition numbers.
struct ConditionBounds {
  double sigma_s2 = 0.0;  ///< largest per-sensor stationary power
  double sigma_t2 = 0.0;  ///< largest per-sensor transient power
  double measurement = 1.0;  ///< gamma_{x,0} > sigma_s2 / sigma_v2
  double subspace_h0 = 1.0;  ///< gamma_{s,0} > 1
  double subspace_h1 = 1.0;  ///< gamma_{s,1} > (sigma_t2 + sigma_v2) / sigma_v2
};

ConditionBounds condition_bounds(const SourceModel& model, const ScenarioConfig& config);

}  // namespace bbsd
