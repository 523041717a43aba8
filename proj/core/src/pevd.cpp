#include "bbsd/pevd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bbsd/error.hpp"

namespace bbsd {

namespace {

double offdiagonal_energy(const CMatrix& c) { return c.squaredNorm() - c.diagonal().squaredNorm(); }

struct Pivot {
  Index column = 0;
  int lag = 0;
  double energy = -1.0;
};

Pivot find_pivot(const LaurentMatrix& S) {
  Pivot best;
  for (int t = S.tau_min(); t <= S.tau_max(); ++t) {
    const CMatrix& c = S.lag(t);
    for (Index k = 0; k < c.cols(); ++k) {
      const double e = c.col(k).squaredNorm() - std::norm(c(k, k));
      if (e > best.energy) best = {k, t, e};
    }
  }
  return best;
}

// S <- D S D^P with d_k(z) = z^{-shift}: row k moves `shift` lags later,
// column k moves `shift` lags earlier, S_kk stays put.
LaurentMatrix shift_row_column(const LaurentMatrix& S, Index k, int shift) {
  const int a = std::abs(shift);
  const int lo = S.tau_min() - a;
  const int hi = S.tau_max() + a;
  std::vector<CMatrix> out(static_cast<std::size_t>(hi - lo + 1), CMatrix::Zero(S.rows(), S.cols()));
  for (int t = lo; t <= hi; ++t) {
    CMatrix& dst = out[static_cast<std::size_t>(t - lo)];
    if (S.has_lag(t)) dst = S.lag(t);
    const CMatrix row_src = S.at(t - shift);
    const CMatrix col_src = S.at(t + shift);
    for (Index j = 0; j < S.cols(); ++j) {
      if (j == k) continue;
      dst(k, j) = row_src(k, j);
      dst(j, k) = col_src(j, k);
    }
  }
  return LaurentMatrix(lo, std::move(out));
}

// Q <- Q D^P: column k advanced by `shift` lags.
LaurentMatrix shift_column(const LaurentMatrix& Q, Index k, int shift) {
  const int a = std::abs(shift);
  const int lo = Q.tau_min() - a;
  const int hi = Q.tau_max() + a;
  std::vector<CMatrix> out(static_cast<std::size_t>(hi - lo + 1), CMatrix::Zero(Q.rows(), Q.cols()));
  for (int t = lo; t <= hi; ++t) {
    CMatrix& dst = out[static_cast<std::size_t>(t - lo)];
    if (Q.has_lag(t)) dst = Q.lag(t);
    dst.col(k) = Q.has_lag(t + shift) ? CVector(Q.lag(t + shift).col(k)) : CVector::Zero(Q.rows());
  }
  // Boundary lags may now be exactly zero; truncate() with a zero budget drops them.
  return truncate(LaurentMatrix(lo, std::move(out)), 0.0);
}

// Eigenvectors of a Hermitian matrix, ordered by non-increasing eigenvalue.
CMatrix ordered_eigenvectors(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Index n = h.rows();
  CMatrix v(n, n);
  for (Index i = 0; i < n; ++i) v.col(i) = es.eigenvectors().col(n - 1 - i);
  return v;
}

// V^H S V on every lag; computes tau >= 0 and mirrors so S stays exactly para-Hermitian.
LaurentMatrix rotate_parahermitian(const LaurentMatrix& S, const CMatrix& V) {
  const int hi = std::max(-S.tau_min(), S.tau_max());
  std::vector<CMatrix> out(static_cast<std::size_t>(2 * hi + 1));
  for (int t = 0; t <= hi; ++t) {
    CMatrix c = V.adjoint() * S.at(t) * V;
    if (t == 0) c = (0.5 * (c + c.adjoint())).eval();
    out[static_cast<std::size_t>(hi - t)] = c.adjoint();
    out[static_cast<std::size_t>(hi + t)] = std::move(c);
  }
  return LaurentMatrix(-hi, std::move(out));
}

LaurentMatrix rotate_columns(const LaurentMatrix& Q, const CMatrix& V) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(Q.num_lags()));
  for (const auto& c : Q.coefficients()) out.emplace_back(c * V);
  return LaurentMatrix(Q.tau_min(), std::move(out));
}

LaurentMatrix permute_columns(const LaurentMatrix& Q, const std::vector<Index>& perm) {
  std::vector<CMatrix> out;
  for (const auto& c : Q.coefficients()) {
    CMatrix p(c.rows(), c.cols());
    for (Index j = 0; j < c.cols(); ++j) p.col(j) = c.col(perm[static_cast<std::size_t>(j)]);
    out.push_back(std::move(p));
  }
  return LaurentMatrix(Q.tau_min(), std::move(out));
}

LaurentMatrix permute_symmetric(const LaurentMatrix& S, const std::vector<Index>& perm) {
  std::vector<CMatrix> out;
  for (const auto& c : S.coefficients()) {
    CMatrix p(c.rows(), c.cols());
    for (Index i = 0; i < c.rows(); ++i) {
      for (Index j = 0; j < c.cols(); ++j) {
        p(i, j) = c(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
      }
    }
    out.push_back(std::move(p));
  }
  return LaurentMatrix(S.tau_min(), std::move(out));
}

}  // namespace

double offdiagonal_ratio(const LaurentMatrix& S) {
  double off = 0.0;
  double total = 0.0;
  for (const auto& c : S.coefficients()) {
    off += offdiagonal_energy(c);
    total += c.squaredNorm();
  }
  return total > 0.0 ? off / total : 0.0;
}

AnalyticEvdResult pevd(const LaurentMatrix& R, const PevdOptions& options) {
  if (R.rows() != R.cols()) throw DimensionError("pevd: input must be square");
  const double scale = std::max(1.0, std::sqrt(R.energy()));
  if (!is_parahermitian(R, 1e-10 * scale)) throw std::invalid_argument("pevd: input is not para-Hermitian");

  const Index m = R.rows();
  LaurentMatrix S = R;
  LaurentMatrix Q = LaurentMatrix::identity(m);
  AnalyticEvdResult result{.Q = Q, .Lambda = S};

  double residual = offdiagonal_ratio(S);
  result.residual_trace.push_back(residual);
  // The off-diagonal ratio of plain SMD can tick up between iterations, so
  // the best iterate is kept and returned.
  LaurentMatrix best_S = S;
  LaurentMatrix best_Q = Q;
  double best = residual;
  int iter = 0;
  while (best > options.residual_tol && iter < options.max_iter) {
    const Pivot p = find_pivot(S);
    if (p.lag != 0) {
      S = shift_row_column(S, p.column, p.lag);
      Q = shift_column(Q, p.column, p.lag);
    }
    const CMatrix V = ordered_eigenvectors(S.lag(0));
    S = truncate_parahermitian(rotate_parahermitian(S, V), options.trunc_eps);
    Q = truncate(rotate_columns(Q, V), options.q_trunc_eps);
    ++iter;
    residual = offdiagonal_ratio(S);
    if (residual <= best) {
      best = residual;
      best_S = S;
      best_Q = Q;
    }
    result.residual_trace.push_back(best);
  }
  S = std::move(best_S);
  Q = std::move(best_Q);
  residual = best;

  // Enforce the lag-0 ordering even when no iteration ran.
  const CMatrix d0 = S.at(0);
  std::vector<Index> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::stable_sort(perm.begin(), perm.end(), [&](Index a, Index b) { return d0(a, a).real() > d0(b, b).real(); });

  result.Q = permute_columns(Q, perm);
  result.Lambda = permute_symmetric(S, perm);
  result.residual = residual;
  result.iterations = iter;
  result.status = residual <= options.residual_tol ? PevdStatus::converged : PevdStatus::max_iterations;
  return result;
}

SubspacePartition partition(const AnalyticEvdResult& evd, Index L) {
  const Index m = evd.Q.cols();
  if (L < 1 || L >= m) {
    throw DimensionError("partition: signal rank " + std::to_string(L) + " outside [1, " + std::to_string(m - 1) + "]");
  }
  return {evd.Q.columns(0, L), evd.Q.columns(L, m - L), L};
}

double diagonalisation_residual(const LaurentMatrix& R, const LaurentMatrix& Q) {
  if (R.rows() != R.cols() || Q.rows() != R.cols()) throw DimensionError("diagonalisation_residual: shape mismatch");
  return offdiagonal_ratio(multiply(paraconjugate(Q), multiply(R, Q)));
}

}  // namespace bbsd
