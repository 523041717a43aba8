#include "bbsd/projection.hpp"

#include "bbsd/error.hpp"

namespace bbsd {

SyndromeStream project(const LaurentMatrix& Q_perp, const CMatrix& x) {
  if (Q_perp.rows() != x.rows()) throw DimensionError("project: Q_perp rows must match sensor count");
  const LaurentMatrix g = paraconjugate(Q_perp);
  const int order = g.order();
  const Index n_out = x.cols() - order;
  if (n_out <= 0) throw DimensionError("project: input shorter than the projection filter");

  CMatrix s = CMatrix::Zero(g.rows(), n_out);
  for (int k = 0; k <= order; ++k) {
    s.noalias() += g.lag(g.tau_min() + k) * x.middleCols(order - k, n_out);
  }
  return {std::move(s), order};
}

}  // namespace bbsd
