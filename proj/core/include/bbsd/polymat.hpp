#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "bbsd/types.hpp"

namespace bbsd {

/**
 * Matrix-valued Laurent polynomial A(z) = sum_tau A[tau] z^{-tau}.
 *
 * Coefficients are stored densely for the contiguous lag range
 * [tau_min, tau_max]. Lags outside that range are zero. The zero polynomial
 * is represented by a single all-zero coefficient at lag 0.
 */
class LaurentMatrix {
 public:
  /// Zero polynomial of the given shape.
  LaurentMatrix(Index rows, Index cols);

  /// Takes ownership of `coeffs`, the coefficient at lag tau_min first.
  LaurentMatrix(int tau_min, std::vector<CMatrix> coeffs);

  static LaurentMatrix identity(Index n);
  static LaurentMatrix constant(const CMatrix& c);
  /// c * z^{-lag}
  static LaurentMatrix monomial(const CMatrix& c, int lag);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  int tau_min() const noexcept { return tau_min_; }
  int tau_max() const noexcept { return tau_min_ + num_lags() - 1; }
  int num_lags() const noexcept { return static_cast<int>(coeffs_.size()); }
  /// Span of the lag support, tau_max - tau_min.
  int order() const noexcept { return num_lags() - 1; }

  bool has_lag(int tau) const noexcept { return tau >= tau_min_ && tau <= tau_max(); }

  /// Coefficient at `tau`; `tau` must lie inside the stored range.
  const CMatrix& lag(int tau) const { return coeffs_[static_cast<std::size_t>(tau - tau_min_)]; }
  CMatrix& lag(int tau) { return coeffs_[static_cast<std::size_t>(tau - tau_min_)]; }

  /// Coefficient at any lag, zero outside the stored range.
  CMatrix at(int tau) const;

  std::span<const CMatrix> coefficients() const noexcept { return coeffs_; }

  /// Squared Frobenius norm summed over all lags.
  double energy() const;

  /// Columns [first, first + count) as a new polynomial over the same lag range.
  LaurentMatrix columns(Index first, Index count) const;

  /// Multiplication by z^{-delay}: every coefficient moves `delay` lags later.
  LaurentMatrix delayed(int delay) const;

  LaurentMatrix& operator+=(const LaurentMatrix& rhs);
  LaurentMatrix& operator-=(const LaurentMatrix& rhs);
  LaurentMatrix& operator*=(Complex s);

  friend LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) { return a += b; }
  friend LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) { return a -= b; }
  friend LaurentMatrix operator*(LaurentMatrix a, Complex s) { return a *= s; }
  friend LaurentMatrix operator*(Complex s, LaurentMatrix a) { return a *= s; }

  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b);

 private:
  void widen_to(int lo, int hi);

  Index rows_;
  Index cols_;
  int tau_min_ = 0;
  std::vector<CMatrix> coeffs_;
};

/// A^P(z) = A^H(1/z*): coefficient at -tau is A[tau]^H.
LaurentMatrix paraconjugate(const LaurentMatrix& a);

/// Polynomial product, i.e. the convolution C[tau] = sum_k A[k] B[tau - k].
/// Throws DimensionError if a.cols() != b.rows().
LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b);

/// max_tau ||R[tau] - R[-tau]^H||_F <= tol. Throws DimensionError if not square.
bool is_parahermitian(const LaurentMatrix& r, double tol);

/// Q^P Q == I within `tol` per lag coefficient (Frobenius). Throws DimensionError if not square.
bool is_paraunitary(const LaurentMatrix& q, double tol);

/// Largest per-lag Frobenius deviation of Q^P Q from the identity.
double paraunitarity_error(const LaurentMatrix& q);

/// Trims boundary lags, smallest-energy end first, while the removed energy
/// stays within epsilon * energy(a). Exact-zero boundary lags always go.
LaurentMatrix truncate(const LaurentMatrix& a, double epsilon);

/// Like truncate(), but removes lag pairs (tau, -tau) together so that a
/// para-Hermitian input stays para-Hermitian.
LaurentMatrix truncate_parahermitian(const LaurentMatrix& a, double epsilon);

/// sum_tau A[tau] e^{-j omega tau}
CMatrix evaluate_at(const LaurentMatrix& a, double omega);

/// Column-wise concatenation [a, b]; both operands must have the same row count.
LaurentMatrix hconcat(const LaurentMatrix& a, const LaurentMatrix& b);

/// Text form: a header line `rows cols tau_min num_lags`, then one line per
/// lag holding the row-major `re im` pairs of that coefficient.
void write_text(std::ostream& os, const LaurentMatrix& a);
LaurentMatrix read_text(std::istream& is);

}  // namespace bbsd
