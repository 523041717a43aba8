#include "bbsd/covariance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bbsd/error.hpp"

namespace bbsd {

LaurentMatrix estimate_csd(const CMatrix& data, int max_lag) {
  const Index n = data.cols();
  if (max_lag < 0 || max_lag >= n) {
    throw std::invalid_argument("estimate_csd: max_lag " + std::to_string(max_lag) + " needs more than " +
                                std::to_string(n) + " samples");
  }
  const Index m = data.rows();
  std::vector<CMatrix> coeffs(static_cast<std::size_t>(2 * max_lag + 1), CMatrix(m, m));
  for (int tau = 0; tau <= max_lag; ++tau) {
    const Index len = n - tau;
    CMatrix r = data.middleCols(tau, len) * data.middleCols(0, len).adjoint();
    r /= static_cast<double>(len);
    if (tau == 0) r = (0.5 * (r + r.adjoint())).eval();
    coeffs[static_cast<std::size_t>(max_lag - tau)] = r.adjoint();
    coeffs[static_cast<std::size_t>(max_lag + tau)] = std::move(r);
  }
  return LaurentMatrix(-max_lag, std::move(coeffs));
}

BlockToeplitzCov block_toeplitz(const LaurentMatrix& R, int T) {
  if (R.rows() != R.cols()) throw DimensionError("block_toeplitz: R must be square");
  if (T < 1) throw DimensionError("block_toeplitz: T must be at least 1");
  const Index d = R.rows();
  CMatrix out = CMatrix::Zero(d * T, d * T);
  for (int i = 0; i < T; ++i) {
    for (int j = 0; j < T; ++j) {
      if (R.has_lag(j - i)) out.block(i * d, j * d, d, d) = R.lag(j - i);
    }
  }
  return {T, d, std::move(out)};
}

LaurentMatrix projected_csd(const LaurentMatrix& R, const LaurentMatrix& Q_perp) {
  if (R.rows() != R.cols() || Q_perp.rows() != R.rows()) {
    throw DimensionError("projected_csd: Q_perp must have as many rows as R");
  }
  return multiply(paraconjugate(Q_perp), multiply(R, Q_perp));
}

double condition_number(const CMatrix& A) {
  if (A.rows() != A.cols()) throw DimensionError("condition_number: matrix must be square");
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
  const RVector s = es.eigenvalues().cwiseAbs();
  const double hi = s.maxCoeff();
  const double lo = s.minCoeff();
  if (hi == 0.0 || lo <= std::numeric_limits<double>::epsilon() * hi) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace bbsd
