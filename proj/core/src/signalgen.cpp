#include "bbsd/signalgen.hpp"

#include <cmath>
#include <string>

#include "bbsd/error.hpp"

namespace bbsd {

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("invalid scenario: " + msg); };
  if (L < 1) fail("L must be at least 1");
  if (M <= L) fail("M must exceed L");
  if (J < 0) fail("J must be non-negative");
  if (num_snapshots <= 0) fail("num_snapshots must be positive");
  if (num_trials < 2) fail("num_trials must be at least 2");
  if (sigma_v2 <= 0.0) fail("sigma_v2 must be positive");
  if (T_range.empty()) fail("T_range is empty");
  for (int t : T_range) {
    if (t < 1) fail("every T in T_range must be >= 1");
  }
  if (effective_max_lag() >= num_snapshots) fail("max_lag must be below num_snapshots");
  if (pevd_max_iter < 1) fail("pevd_max_iter must be positive");
  if (pevd_residual_tol < 0.0 || pevd_trunc_eps < 0.0 || pevd_trunc_eps >= 1.0) fail("pevd tolerances out of range");
  if (projection_trunc_eps < 0.0 || projection_trunc_eps >= 1.0) fail("projection_trunc_eps out of range");
  if (eigen_floor < 0.0) fail("eigen_floor must be non-negative");
}

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (tags.size() + 1));
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto t : tags) push(t);
  std::seed_seq seq(words.begin(), words.end());
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

Complex Rng::complex_normal(double variance) {
  const double s = std::sqrt(0.5 * variance);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {s * re, s * im};
}

CMatrix Rng::complex_normal(Index rows, Index cols, double variance) {
  CMatrix out(rows, cols);
  // Column-major fill keeps the draw order stable for a given shape.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = complex_normal(variance);
  }
  return out;
}

CMatrix random_unitary(Index dim, Rng& rng) {
  const CMatrix g = rng.complex_normal(dim, dim);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the draw is Haar distributed.
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

LaurentMatrix random_paraunitary(Index dim, int order, Rng& rng) {
  std::vector<CMatrix> coeffs{random_unitary(dim, rng)};
  for (int f = 0; f < order; ++f) {
    CVector v = rng.complex_normal(dim, 1);
    v.normalize();
    const CMatrix p = v * v.adjoint();
    const CMatrix keep = CMatrix::Identity(dim, dim) - p;
    // (sum_k C[k] z^{-k}) (keep + p z^{-1})
    std::vector<CMatrix> next(coeffs.size() + 1, CMatrix::Zero(dim, dim));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k].noalias() += coeffs[k] * keep;
      next[k + 1].noalias() += coeffs[k] * p;
    }
    coeffs = std::move(next);
  }
  return LaurentMatrix(0, std::move(coeffs));
}

std::vector<Complex> random_innovation_filter(int order, Rng& rng) {
  std::vector<Complex> taps(static_cast<std::size_t>(order + 1));
  double energy = 0.0;
  for (auto& t : taps) {
    t = rng.complex_normal();
    energy += std::norm(t);
  }
  for (auto& t : taps) t /= std::sqrt(energy);
  return taps;
}

namespace {

// Diagonal L x L polynomial matrix of independent innovation filters.
LaurentMatrix innovation_matrix(Index L, int order, Rng& rng) {
  std::vector<CMatrix> coeffs(static_cast<std::size_t>(order + 1), CMatrix::Zero(L, L));
  for (Index l = 0; l < L; ++l) {
    const auto taps = random_innovation_filter(order, rng);
    for (std::size_t k = 0; k < taps.size(); ++k) coeffs[k](l, l) = taps[k];
  }
  return LaurentMatrix(0, std::move(coeffs));
}

}  // namespace

RVector per_sensor_power(const LaurentMatrix& filters) {
  RVector p = RVector::Zero(filters.rows());
  for (const auto& c : filters.coefficients()) p += c.rowwise().squaredNorm();
  return p;
}

SourceModel build_mixing_system(const ScenarioConfig& config, Rng& rng) {
  config.validate();
  const Index M = config.M;
  const Index L = config.L;
  const int jd = config.effective_innovation_order();

  const LaurentMatrix U = random_paraunitary(M, config.J - jd, rng).columns(0, L);
  LaurentMatrix H = multiply(U, innovation_matrix(L, jd, rng));
  const double stationary_power = config.sigma_v2 * std::pow(10.0, config.snr_db / 10.0);
  H *= Complex(std::sqrt(static_cast<double>(M) * stationary_power / H.energy()), 0.0);

  const int jt = config.effective_transient_order();
  const int jdt = std::min(jd, jt);
  const LaurentMatrix ut = random_paraunitary(M, jt - jdt, rng).columns(0, 1);
  LaurentMatrix h_t = multiply(ut, innovation_matrix(1, jdt, rng));
  h_t *= Complex(std::sqrt(static_cast<double>(M) / h_t.energy()), 0.0);

  const double sigma_t2 =
      config.transient_enabled ? stationary_power * std::pow(10.0, -config.transient_db_below / 10.0) : 0.0;
  return {std::move(H), std::move(h_t), sigma_t2};
}

namespace {

// out += sum_k F[k] in[:, offset - k + n], for n in [0, out.cols())
void accumulate_filtered(const LaurentMatrix& f, const CMatrix& in, Index offset, CMatrix& out) {
  const Index n = out.cols();
  for (int k = f.tau_min(); k <= f.tau_max(); ++k) {
    out.noalias() += f.lag(k) * in.middleCols(offset - k, n);
  }
}

}  // namespace

CMatrix generate_measurements(const SourceModel& model, const ScenarioConfig& config, bool with_transient,
                              Index n_samples, Rng& rng) {
  const Index M = model.H.rows();
  const int warmup = std::max(model.H.tau_max(), model.h_t.tau_max());
  CMatrix x = CMatrix::Zero(M, n_samples);

  const CMatrix u = rng.complex_normal(model.H.cols(), n_samples + warmup);
  accumulate_filtered(model.H, u, warmup, x);
  if (with_transient && model.sigma_t2 > 0.0) {
    const CMatrix ut = rng.complex_normal(1, n_samples + warmup, model.sigma_t2);
    accumulate_filtered(model.h_t, ut, warmup, x);
  }
  x += rng.complex_normal(M, n_samples, config.sigma_v2);
  return x;
}

std::pair<LaurentMatrix, LaurentMatrix> ground_truth_csd(const SourceModel& model, double sigma_v2) {
  const Index M = model.H.rows();
  LaurentMatrix R = multiply(model.H, paraconjugate(model.H));
  R += LaurentMatrix::constant(CMatrix::Identity(M, M) * sigma_v2);
  LaurentMatrix Rt = multiply(model.h_t, paraconjugate(model.h_t));
  Rt *= Complex(model.sigma_t2, 0.0);
  return {std::move(R), std::move(Rt)};
}

}  // namespace bbsd
