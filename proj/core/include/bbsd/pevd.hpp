#pragma once

#include <vector>

#include "bbsd/polymat.hpp"

namespace bbsd {

struct PevdOptions {
  int max_iter = 500;
  /// Stop once off-diagonal energy / total energy of Lambda falls to this.
  double residual_tol = 1e-3;
  /// Relative energy budget for trimming Lambda after every iteration.
  double trunc_eps = 1e-6;
  /// Relative energy budget for trimming Q. Kept far below trunc_eps: every
  /// bit of energy cut from Q shows up directly as a paraunitarity defect.
  double q_trunc_eps = 1e-22;
};

enum class PevdStatus { converged, max_iterations };

/// R(z) ~= Q(z) Lambda(z) Q^P(z) with paraunitary Q and near-diagonal Lambda.
struct AnalyticEvdResult {
  LaurentMatrix Q;
  LaurentMatrix Lambda;
  double residual = 0.0;
  int iterations = 0;
  PevdStatus status = PevdStatus::converged;
  /// Best residual before the first iteration and after each one.
  std::vector<double> residual_trace{};
};

/// Signal subspace (columns with the largest lag-0 eigenvalues) and its
/// noise-only complement.
struct SubspacePartition {
  LaurentMatrix Q_par;
  LaurentMatrix Q_perp;
  Index L;
};

/**
 * Polynomial EVD by sequential matrix diagonalisation.
 *
 * Each iteration finds the column whose off-diagonal energy at a single lag
 * is largest, delays that row/column pair so the energy lands on lag zero,
 * then diagonalises lag zero with an ordered Hermitian EVD applied across all
 * lags. Q is built only from delays and unitary matrices, so it stays
 * paraunitary up to the Q truncation budget.
 *
 * The off-diagonal ratio is not monotone under these steps. The result is
 * the iterate with the smallest ratio seen, and residual_trace[i] is the best
 * ratio after i iterations, so the trace never increases.
 *
 * Throws DimensionError for a non-square input and std::invalid_argument if
 * R is not para-Hermitian to 1e-10 relative to its norm.
 */
AnalyticEvdResult pevd(const LaurentMatrix& R, const PevdOptions& options = {});

/// Splits Q into the first L columns and the remaining M - L.
SubspacePartition partition(const AnalyticEvdResult& evd, Index L);

/// Off-diagonal energy of Q^P R Q over all lags, divided by its total energy.
double diagonalisation_residual(const LaurentMatrix& R, const LaurentMatrix& Q);

/// Off-diagonal energy ratio of an already transformed matrix.
double offdiagonal_ratio(const LaurentMatrix& S);

}  // namespace bbsd
