#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "bbsd/polymat.hpp"

namespace bbsd {

/// Experiment parameters. Field names double as config-file keys.
struct ScenarioConfig {
  Index M = 10;
  Index L = 7;
  int J = 10;
  double snr_db = 20.0;
  double transient_db_below = 10.0;
  double sigma_v2 = 1.0;
  Index num_snapshots = 100000;
  std::vector<int> T_range = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  Index num_trials = 10000;
  std::uint64_t seed = 1;

  /// Innovation filter order; negative selects min(4, J).
  int innovation_order = -1;
  /// Order of the transient steering filters; negative selects J.
  int transient_order = -1;
  /// Largest lag of estimated CSDs; negative selects 2J.
  int max_lag = -1;
  /// false switches the transient off entirely (sigma_t^2 = 0).
  bool transient_enabled = true;

  /// Decomposition settings for the experiments. Tighter than PevdOptions'
  /// defaults: the noise subspace is only whitened to about 1% once the
  /// off-diagonal residual is near 1e-6.
  int pevd_max_iter = 5000;
  double pevd_residual_tol = 1e-6;
  double pevd_trunc_eps = 1e-8;
  /// Relative energy trimmed from Q_perp before it is used as a filter.
  double projection_trunc_eps = 1e-5;
  double eigen_floor = 1e-12;

  int effective_innovation_order() const { return innovation_order < 0 ? std::min(4, J) : std::min(innovation_order, J); }
  int effective_transient_order() const { return transient_order < 0 ? J : transient_order; }
  int effective_max_lag() const { return max_lag < 0 ? 2 * J : max_lag; }

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Ground-truth mixing system.
struct SourceModel {
  LaurentMatrix H;    ///< M x L stationary mixing filters, order J
  LaurentMatrix h_t;  ///< M x 1 transient steering filters, energy M
  double sigma_t2 = 0.0;
};

/// Deterministic random stream of circularly-symmetric complex Gaussians.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from a root seed and a list of tags, e.g.
  /// (seed, method, T). Equal inputs give equal streams.
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

  /// CN(0, variance): real and imaginary parts each carry variance / 2.
  Complex complex_normal(double variance = 1.0);
  CMatrix complex_normal(Index rows, Index cols, double variance = 1.0);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Product of `order` elementary factors (I - v v^H + z^{-1} v v^H), left
/// multiplied by a random constant unitary.
LaurentMatrix random_paraunitary(Index dim, int order, Rng& rng);

/// Haar-distributed constant unitary.
CMatrix random_unitary(Index dim, Rng& rng);

/// Random FIR innovation filter of the given order, i.i.d. CN(0,1) taps
/// normalised to unit energy.
std::vector<Complex> random_innovation_filter(int order, Rng& rng);

SourceModel build_mixing_system(const ScenarioConfig& config, Rng& rng);

/// M x n_samples measurement block, warm-up samples already discarded.
CMatrix generate_measurements(const SourceModel& model, const ScenarioConfig& config, bool with_transient,
                              Index n_samples, Rng& rng);

/// {R(z) = H H^P + sigma_v2 I, R_t(z) = sigma_t2 h_t h_t^P}
std::pair<LaurentMatrix, LaurentMatrix> ground_truth_csd(const SourceModel& model, double sigma_v2);

/// Per-sensor power of an M x K filter bank driven by unit-variance white inputs.
RVector per_sensor_power(const LaurentMatrix& filters);

}  // namespace bbsd
