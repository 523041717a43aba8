#pragma once

#include "bbsd/polymat.hpp"

namespace bbsd {

/// Stacked covariance of T concatenated snapshots of a block_dim-channel signal.
struct BlockToeplitzCov {
  int T = 1;
  Index block_dim = 1;
  CMatrix matrix;  ///< (block_dim T) x (block_dim T), block (i, j) = R[j - i]
};

/// Unbiased lag-windowed estimate R[tau] = 1/(N - tau) sum_n x[n] x^H[n - tau]
/// for 0 <= tau <= max_lag, mirrored to negative lags. Throws
/// std::invalid_argument if max_lag >= N.
LaurentMatrix estimate_csd(const CMatrix& data, int max_lag);

/// Block (i, j) equals R[j - i]; lags outside R's support contribute zero.
/// Throws DimensionError if R is not square or T < 1.
BlockToeplitzCov block_toeplitz(const LaurentMatrix& R, int T);

/// Q_perp^P(z) R(z) Q_perp(z). Throws DimensionError on shape mismatch.
LaurentMatrix projected_csd(const LaurentMatrix& R, const LaurentMatrix& Q_perp);

/// Ratio of the extreme singular values of a Hermitian matrix; +infinity
/// when the smallest one vanishes to working precision.
double condition_number(const CMatrix& A);

}  // namespace bbsd
