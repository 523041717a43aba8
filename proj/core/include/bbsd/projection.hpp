#pragma once

#include "bbsd/polymat.hpp"

namespace bbsd {

/// Noise-subspace projection s[n] of a measurement block.
struct SyndromeStream {
  CMatrix data;          ///< (M - L) x N', one column per valid output sample
  Index valid_from = 0;  ///< input sample index aligned with data column 0
};

/**
 * s[n] = sum_nu Q_perp^H[-nu] x[n - nu], i.e. x filtered by Q_perp^P(z).
 *
 * The non-causal filter is realised causally, so column i of the result is
 * s[valid_from + i + g] where g is the lowest lag of Q_perp^P. Only outputs
 * with full filter support are returned: valid_from = order of Q_perp and
 * N' = N - order. Throws DimensionError if Q_perp does not have x.rows()
 * rows or if x is shorter than the filter.
 */
SyndromeStream project(const LaurentMatrix& Q_perp, const CMatrix& x);

}  // namespace bbsd
