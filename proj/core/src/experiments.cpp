#include "bbsd/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "bbsd/config.hpp"
#include "bbsd/covariance.hpp"
#include "bbsd/error.hpp"
#include "bbsd/lrt.hpp"
#include "bbsd/pevd.hpp"

namespace bbsd {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::lrt_x: return "lrt_x";
    case Method::lrt_s: return "lrt_s";
    case Method::glrt_x: return "glrt_x";
    case Method::glrt_s: return "glrt_s";
    case Method::power_s: return "power_s";
  }
  return "unknown";
}

std::string_view to_string(CellStatus s) { return s == CellStatus::ok ? "ok" : "ill_conditioned"; }

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double separability(std::span<const double> h0, std::span<const double> h1) {
  if (h0.size() < 2 || h1.size() < 2) throw std::invalid_argument("separability: need at least 2 samples per hypothesis");
  auto moments = [](std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair{mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
  };
  const auto [mu0, sd0] = moments(h0);
  const auto [mu1, sd1] = moments(h1);
  const double gap = std::abs(mu1 - mu0);
  const double spread = 0.5 * (sd0 + sd1);
  if (spread == 0.0) return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return gap / spread;
}

double power_statistic(const SyndromeStream& s, Index n, int T) {
  if (T < 1 || n < T - 1 || n >= s.data.cols()) throw std::out_of_range("power_statistic: window not available");
  return s.data.middleCols(n - T + 1, T).colwise().squaredNorm().mean();
}

ScenarioConfig figure3_config() {
  ScenarioConfig c;
  c.J = 10;
  c.transient_db_below = 10.0;
  return c;
}

ScenarioConfig figure2_config() {
  ScenarioConfig c;
  c.J = 20;
  c.transient_db_below = 20.0;
  return c;
}

namespace {

// Stream tags for Rng::derive. Changing them changes every result.
enum : std::uint64_t { kTagModel = 1, kTagTrain = 2, kTagTest = 3 };

bool is_subspace(Method m) { return m == Method::lrt_s || m == Method::glrt_s || m == Method::power_s; }

// Everything a cell needs that is shared across the sweep.
struct Setup {
  SourceModel model;
  LaurentMatrix R;      // ground-truth measurement CSD under H0
  LaurentMatrix R1;     // ground-truth transient CSD
  LaurentMatrix Qp;     // noise subspace from the ground truth
  LaurentMatrix Rs;     // projected ground-truth CSDs
  LaurentMatrix Rs1;
  LaurentMatrix Rx0_hat;  // training estimates
  LaurentMatrix Rx1_hat;
  LaurentMatrix Qp_hat;
  LaurentMatrix Rs0_hat;
  LaurentMatrix Rs1_hat;
  double residual_truth = 0.0;
  double residual_estimate = 0.0;
};

LaurentMatrix noise_subspace(const LaurentMatrix& R, const ScenarioConfig& c, double& residual) {
  PevdOptions opts;
  opts.max_iter = c.pevd_max_iter;
  opts.residual_tol = c.pevd_residual_tol;
  opts.trunc_eps = c.pevd_trunc_eps;
  const AnalyticEvdResult evd = pevd(R, opts);
  residual = evd.residual;
  return truncate(partition(evd, c.L).Q_perp, c.projection_trunc_eps);
}

}  // namespace

SourceModel experiment_model(const ScenarioConfig& config) {
  Rng rng = Rng::derive(config.seed, {kTagModel});
  return build_mixing_system(config, rng);
}

namespace {

Setup prepare(const ScenarioConfig& c) {
  SourceModel model = experiment_model(c);
  auto [R, R1] = ground_truth_csd(model, c.sigma_v2);

  Setup s{.model = std::move(model),
          .R = std::move(R),
          .R1 = std::move(R1),
          .Qp = LaurentMatrix(c.M, c.M - c.L),
          .Rs = LaurentMatrix(c.M - c.L, c.M - c.L),
          .Rs1 = LaurentMatrix(c.M - c.L, c.M - c.L),
          .Rx0_hat = LaurentMatrix(c.M, c.M),
          .Rx1_hat = LaurentMatrix(c.M, c.M),
          .Qp_hat = LaurentMatrix(c.M, c.M - c.L),
          .Rs0_hat = LaurentMatrix(c.M - c.L, c.M - c.L),
          .Rs1_hat = LaurentMatrix(c.M - c.L, c.M - c.L)};

  s.Qp = noise_subspace(s.R, c, s.residual_truth);
  s.Rs = projected_csd(s.R, s.Qp);
  s.Rs1 = projected_csd(s.R1, s.Qp);

  const int t_max = *std::max_element(c.T_range.begin(), c.T_range.end());
  const int lags = std::max(c.effective_max_lag(), t_max - 1);
  Rng rng0 = Rng::derive(c.seed, {kTagTrain, 0});
  Rng rng1 = Rng::derive(c.seed, {kTagTrain, 1});
  const CMatrix X0 = generate_measurements(s.model, c, false, c.num_snapshots, rng0);
  const CMatrix X1 = generate_measurements(s.model, c, true, c.num_snapshots, rng1);
  s.Rx0_hat = estimate_csd(X0, lags);
  s.Rx1_hat = estimate_csd(X1, lags);

  s.Qp_hat = noise_subspace(s.Rx0_hat, c, s.residual_estimate);
  const SyndromeStream S0 = project(s.Qp_hat, X0);
  const SyndromeStream S1 = project(s.Qp_hat, X1);
  s.Rs0_hat = estimate_csd(S0.data, t_max - 1);
  s.Rs1_hat = estimate_csd(S1.data, t_max - 1);
  return s;
}

// Fresh test stream for one hypothesis of one cell. Subspace methods see the
// syndrome of the measurements, already trimmed to full filter support.
CMatrix test_stream(const Setup& s, const ScenarioConfig& c, Method m, int T, bool h1) {
  Rng rng = Rng::derive(c.seed, {kTagTest, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(T), h1 ? 1u : 0u});
  const Index needed = c.num_trials * T;
  if (!is_subspace(m)) return generate_measurements(s.model, c, h1, needed, rng);
  const LaurentMatrix& q = m == Method::glrt_s ? s.Qp_hat : s.Qp;
  const CMatrix x = generate_measurements(s.model, c, h1, needed + q.order(), rng);
  return project(q, x).data;
}

// Non-overlapping windows: trial k ends at column (k + 1) T - 1.
CMatrix stacked_trials(const CMatrix& stream, int T, Index trials) {
  const Index d = stream.rows();
  CMatrix Y(d * T, trials);
  for (Index k = 0; k < trials; ++k) Y.col(k) = stack_snapshots(stream, (k + 1) * T - 1, T);
  return Y;
}

RVector power_trials(const CMatrix& stream, int T, Index trials) {
  const SyndromeStream s{stream, 0};
  RVector out(trials);
  for (Index k = 0; k < trials; ++k) out(k) = power_statistic(s, (k + 1) * T - 1, T);
  return out;
}

std::pair<const LaurentMatrix*, LaurentMatrix> covariance_pair(const Setup& s, Method m) {
  switch (m) {
    case Method::lrt_x: return {&s.R, s.R + s.R1};
    case Method::lrt_s:
    case Method::power_s: return {&s.Rs, s.Rs + s.Rs1};
    case Method::glrt_x: return {&s.Rx0_hat, s.Rx1_hat};
    case Method::glrt_s: return {&s.Rs0_hat, s.Rs1_hat};
  }
  throw std::logic_error("unknown method");
}

double finite_separability(const RVector& h0, const RVector& h1) {
  if (!h0.allFinite() || !h1.allFinite()) return std::numeric_limits<double>::quiet_NaN();
  return separability(std::span<const double>(h0.data(), static_cast<std::size_t>(h0.size())),
                      std::span<const double>(h1.data(), static_cast<std::size_t>(h1.size())));
}

ExperimentRecord run_cell(const Setup& s, const ScenarioConfig& c, Method m, int T) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.method = m;
  rec.T = T;

  const auto [r0, r01] = covariance_pair(s, m);
  const CMatrix R0 = block_toeplitz(*r0, T).matrix;
  const CMatrix R01 = block_toeplitz(r01, T).matrix;
  rec.cond_H0 = condition_number(R0);
  rec.cond_H1 = condition_number(R01);

  const CMatrix x0 = test_stream(s, c, m, T, false);
  const CMatrix x1 = test_stream(s, c, m, T, true);
  RVector t0;
  RVector t1;
  if (m == Method::power_s) {
    t0 = power_trials(x0, T, c.num_trials);
    t1 = power_trials(x1, T, c.num_trials);
  } else {
    LrtDetector det;
    try {
      det = build_detector(R0, R01, c.eigen_floor);
    } catch (const IllConditionedError&) {
      rec.status = CellStatus::ill_conditioned;
      det = build_detector_unchecked(R0, R01, c.eigen_floor);
    }
    t0 = test_statistics(det, stacked_trials(x0, T, c.num_trials));
    t1 = test_statistics(det, stacked_trials(x1, T, c.num_trials));
  }
  rec.delta = finite_separability(t0, t1);
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& config) {
  config.validate();
  const Setup s = prepare(config);
  ExperimentResult result;
  result.pevd_residual_truth = s.residual_truth;
  result.pevd_residual_estimate = s.residual_estimate;
  result.q_perp_order_truth = s.Qp.order();
  result.q_perp_order_estimate = s.Qp_hat.order();
  for (int T : config.T_range) {
    for (Method m : kAllMethods) result.records.push_back(run_cell(s, config, m, T));
  }
  return result;
}

void write_csv(std::ostream& os, const ScenarioConfig& config, const ExperimentResult& result) {
  os << "# bbsd experiment\n";
  os << "# seed: " << config.seed << '\n';
  os << "# config: " << to_json(config) << '\n';
  os.precision(6);
  os << "# pevd_residual_truth: " << result.pevd_residual_truth << '\n';
  os << "# pevd_residual_estimate: " << result.pevd_residual_estimate << '\n';
  os << "# q_perp_order_truth: " << result.q_perp_order_truth << '\n';
  os << "# q_perp_order_estimate: " << result.q_perp_order_estimate << '\n';
  os << kCsvHeader << '\n';
  os.precision(10);
  for (const auto& r : result.records) {
    os << to_string(r.method) << ',' << r.T << ',' << r.delta << ',' << r.cond_H0 << ',' << r.cond_H1 << ','
       << to_string(r.status) << ',';
    os.precision(3);
    os << std::fixed << r.wall_time_ms << std::defaultfloat << '\n';
    os.precision(10);
  }
}

ExperimentResult run_experiment(const ScenarioConfig& config, const std::filesystem::path& output_path) {
  config.validate();
  // Opened up front so an unwritable path fails before the sweep runs.
  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot open " + output_path.string() + " for writing");
  ExperimentResult result = run_experiment(config);
  write_csv(out, config, result);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + output_path.string());
  return result;
}

}  // namespace bbsd
