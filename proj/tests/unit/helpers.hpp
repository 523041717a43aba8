#pragma once

#include <vector>

#include "bbsd/polymat.hpp"
#include "bbsd/signalgen.hpp"

namespace bbsd::testing {

inline LaurentMatrix random_laurent(Index rows, Index cols, int tau_min, int order, Rng& rng) {
  std::vector<CMatrix> c;
  for (int k = 0; k <= order; ++k) c.push_back(rng.complex_normal(rows, cols));
  return LaurentMatrix(tau_min, std::move(c));
}

inline double rel_err(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / b.norm(); }

/// Total energy of a - b over the union of lag ranges.
inline double diff_energy(const LaurentMatrix& a, const LaurentMatrix& b) { return (a - b).energy(); }

}  // namespace bbsd::testing
