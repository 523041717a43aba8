#include "bbsd/polymat.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string>

#include "bbsd/error.hpp"

namespace bbsd {

namespace {

bool is_exact_zero(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

// Drops exactly-zero boundary lags; an all-zero polynomial collapses to lag 0.
LaurentMatrix strip_zero_lags(int tau_min, std::vector<CMatrix> coeffs) {
  std::size_t lo = 0;
  std::size_t hi = coeffs.size();
  while (lo < hi && is_exact_zero(coeffs[lo])) ++lo;
  while (hi > lo && is_exact_zero(coeffs[hi - 1])) --hi;
  if (lo == hi) {
    return LaurentMatrix(coeffs.front().rows(), coeffs.front().cols());
  }
  if (lo == 0 && hi == coeffs.size()) return LaurentMatrix(tau_min, std::move(coeffs));
  std::vector<CMatrix> kept(std::make_move_iterator(coeffs.begin() + static_cast<std::ptrdiff_t>(lo)),
                            std::make_move_iterator(coeffs.begin() + static_cast<std::ptrdiff_t>(hi)));
  return LaurentMatrix(tau_min + static_cast<int>(lo), std::move(kept));
}

void require_square(const LaurentMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": expected a square polynomial matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

LaurentMatrix::LaurentMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) throw DimensionError("LaurentMatrix: dimensions must be positive");
  coeffs_.push_back(CMatrix::Zero(rows, cols));
}

LaurentMatrix::LaurentMatrix(int tau_min, std::vector<CMatrix> coeffs)
    : rows_(0), cols_(0), tau_min_(tau_min), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DimensionError("LaurentMatrix: empty coefficient sequence");
  rows_ = coeffs_.front().rows();
  cols_ = coeffs_.front().cols();
  if (rows_ <= 0 || cols_ <= 0) throw DimensionError("LaurentMatrix: dimensions must be positive");
  for (const auto& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_) {
      throw DimensionError("LaurentMatrix: coefficient matrices differ in shape");
    }
  }
}

LaurentMatrix LaurentMatrix::identity(Index n) { return constant(CMatrix::Identity(n, n)); }

LaurentMatrix LaurentMatrix::constant(const CMatrix& c) { return LaurentMatrix(0, {c}); }

LaurentMatrix LaurentMatrix::monomial(const CMatrix& c, int lag) { return LaurentMatrix(lag, {c}); }

CMatrix LaurentMatrix::at(int tau) const {
  if (!has_lag(tau)) return CMatrix::Zero(rows_, cols_);
  return lag(tau);
}

double LaurentMatrix::energy() const {
  double e = 0.0;
  for (const auto& c : coeffs_) e += c.squaredNorm();
  return e;
}

LaurentMatrix LaurentMatrix::columns(Index first, Index count) const {
  if (first < 0 || count <= 0 || first + count > cols_) {
    throw DimensionError("LaurentMatrix::columns: column range out of bounds");
  }
  std::vector<CMatrix> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.emplace_back(c.middleCols(first, count));
  return LaurentMatrix(tau_min_, std::move(out));
}

LaurentMatrix LaurentMatrix::delayed(int delay) const {
  LaurentMatrix out = *this;
  out.tau_min_ += delay;
  return out;
}

void LaurentMatrix::widen_to(int lo, int hi) {
  if (lo >= tau_min_ && hi <= tau_max()) return;
  const int new_lo = std::min(lo, tau_min_);
  const int new_hi = std::max(hi, tau_max());
  std::vector<CMatrix> out(static_cast<std::size_t>(new_hi - new_lo + 1), CMatrix::Zero(rows_, cols_));
  for (int t = tau_min_; t <= tau_max(); ++t) out[static_cast<std::size_t>(t - new_lo)] = std::move(lag(t));
  coeffs_ = std::move(out);
  tau_min_ = new_lo;
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& rhs) {
  if (rhs.rows_ != rows_ || rhs.cols_ != cols_) throw DimensionError("LaurentMatrix: sum of mismatched shapes");
  widen_to(rhs.tau_min(), rhs.tau_max());
  for (int t = rhs.tau_min(); t <= rhs.tau_max(); ++t) lag(t) += rhs.lag(t);
  *this = strip_zero_lags(tau_min_, std::move(coeffs_));
  return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& rhs) {
  if (rhs.rows_ != rows_ || rhs.cols_ != cols_) throw DimensionError("LaurentMatrix: difference of mismatched shapes");
  widen_to(rhs.tau_min(), rhs.tau_max());
  for (int t = rhs.tau_min(); t <= rhs.tau_max(); ++t) lag(t) -= rhs.lag(t);
  *this = strip_zero_lags(tau_min_, std::move(coeffs_));
  return *this;
}

LaurentMatrix& LaurentMatrix::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  *this = strip_zero_lags(tau_min_, std::move(coeffs_));
  return *this;
}

bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.tau_min_ != b.tau_min_ || a.coeffs_.size() != b.coeffs_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  }
  return true;
}

LaurentMatrix paraconjugate(const LaurentMatrix& a) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(a.num_lags()));
  for (int t = a.tau_max(); t >= a.tau_min(); --t) out.emplace_back(a.lag(t).adjoint());
  return LaurentMatrix(-a.tau_max(), std::move(out));
}

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: incompatible inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()));
  }
  const int lo = a.tau_min() + b.tau_min();
  const int n = a.num_lags() + b.num_lags() - 1;
  std::vector<CMatrix> out(static_cast<std::size_t>(n), CMatrix::Zero(a.rows(), b.cols()));
  for (int i = 0; i < a.num_lags(); ++i) {
    const CMatrix& ai = a.coefficients()[static_cast<std::size_t>(i)];
    for (int j = 0; j < b.num_lags(); ++j) {
      out[static_cast<std::size_t>(i + j)].noalias() += ai * b.coefficients()[static_cast<std::size_t>(j)];
    }
  }
  return strip_zero_lags(lo, std::move(out));
}

bool is_parahermitian(const LaurentMatrix& r, double tol) {
  require_square(r, "is_parahermitian");
  const int hi = std::max(std::abs(r.tau_min()), std::abs(r.tau_max()));
  for (int t = 0; t <= hi; ++t) {
    if ((r.at(t) - r.at(-t).adjoint()).norm() > tol) return false;
  }
  return true;
}

double paraunitarity_error(const LaurentMatrix& q) {
  require_square(q, "is_paraunitary");
  const LaurentMatrix g = multiply(paraconjugate(q), q);
  double worst = 0.0;
  for (int t = g.tau_min(); t <= g.tau_max(); ++t) {
    CMatrix d = g.lag(t);
    if (t == 0) d -= CMatrix::Identity(q.rows(), q.cols());
    worst = std::max(worst, d.norm());
  }
  if (!g.has_lag(0)) worst = std::max(worst, std::sqrt(static_cast<double>(q.rows())));
  return worst;
}

bool is_paraunitary(const LaurentMatrix& q, double tol) { return paraunitarity_error(q) <= tol; }

LaurentMatrix truncate(const LaurentMatrix& a, double epsilon) {
  const auto coeffs = a.coefficients();
  std::vector<double> e(coeffs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    e[i] = coeffs[i].squaredNorm();
    total += e[i];
  }
  const double budget = epsilon * total;
  double removed = 0.0;
  std::size_t lo = 0;
  std::size_t hi = coeffs.size();  // exclusive
  while (hi - lo > 1) {
    const bool front = e[lo] <= e[hi - 1];
    const double cost = front ? e[lo] : e[hi - 1];
    if (removed + cost > budget) break;
    removed += cost;
    if (front) {
      ++lo;
    } else {
      --hi;
    }
  }
  std::vector<CMatrix> kept(coeffs.begin() + static_cast<std::ptrdiff_t>(lo),
                            coeffs.begin() + static_cast<std::ptrdiff_t>(hi));
  return strip_zero_lags(a.tau_min() + static_cast<int>(lo), std::move(kept));
}

LaurentMatrix truncate_parahermitian(const LaurentMatrix& a, double epsilon) {
  const int hi = std::max(std::abs(a.tau_min()), std::abs(a.tau_max()));
  std::vector<double> pair_energy(static_cast<std::size_t>(hi + 1), 0.0);
  double total = 0.0;
  for (int t = a.tau_min(); t <= a.tau_max(); ++t) {
    const double e = a.lag(t).squaredNorm();
    pair_energy[static_cast<std::size_t>(std::abs(t))] += e;
    total += e;
  }
  const double budget = epsilon * total;
  double removed = 0.0;
  int keep = hi;
  while (keep > 0 && removed + pair_energy[static_cast<std::size_t>(keep)] <= budget) {
    removed += pair_energy[static_cast<std::size_t>(keep)];
    --keep;
  }
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(2 * keep + 1));
  for (int t = -keep; t <= keep; ++t) out.push_back(a.at(t));
  return strip_zero_lags(-keep, std::move(out));
}

CMatrix evaluate_at(const LaurentMatrix& a, double omega) {
  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  for (int t = a.tau_min(); t <= a.tau_max(); ++t) {
    out += std::polar(1.0, -omega * static_cast<double>(t)) * a.lag(t);
  }
  return out;
}

LaurentMatrix hconcat(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hconcat: row counts differ");
  const int lo = std::min(a.tau_min(), b.tau_min());
  const int hi = std::max(a.tau_max(), b.tau_max());
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int t = lo; t <= hi; ++t) {
    CMatrix c(a.rows(), a.cols() + b.cols());
    c << a.at(t), b.at(t);
    out.push_back(std::move(c));
  }
  return LaurentMatrix(lo, std::move(out));
}

void write_text(std::ostream& os, const LaurentMatrix& a) {
  const auto old_precision = os.precision(17);
  os << a.rows() << ' ' << a.cols() << ' ' << a.tau_min() << ' ' << a.num_lags() << '\n';
  for (const auto& c : a.coefficients()) {
    for (Index i = 0; i < c.rows(); ++i) {
      for (Index j = 0; j < c.cols(); ++j) {
        if (i != 0 || j != 0) os << ' ';
        os << c(i, j).real() << ' ' << c(i, j).imag();
      }
    }
    os << '\n';
  }
  os.precision(old_precision);
}

LaurentMatrix read_text(std::istream& is) {
  Index rows = 0;
  Index cols = 0;
  int tau_min = 0;
  int num_lags = 0;
  if (!(is >> rows >> cols >> tau_min >> num_lags) || rows <= 0 || cols <= 0 || num_lags <= 0) {
    throw std::runtime_error("read_text: malformed LaurentMatrix header");
  }
  std::vector<CMatrix> coeffs(static_cast<std::size_t>(num_lags), CMatrix(rows, cols));
  for (auto& c : coeffs) {
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) {
        double re = 0.0;
        double im = 0.0;
        if (!(is >> re >> im)) throw std::runtime_error("read_text: truncated LaurentMatrix body");
        c(i, j) = Complex(re, im);
      }
    }
  }
  return LaurentMatrix(tau_min, std::move(coeffs));
}

}  // namespace bbsd
