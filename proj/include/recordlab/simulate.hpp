#pragma once

#include "recordlab/asymptotic.hpp"
#include "recordlab/correlation.hpp"
#include "recordlab/multivariate.hpp"
#include "recordlab/rng.hpp"
#include "recordlab/types.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

namespace recordlab {

// X_t = X_{t-1} / m + eps_t, eps uniform on {0, 1/m, ..., (m-1)/m}, X_0 ~ U[0, 1].
struct ChernickProcess {
  int m = 2;
};

// X_t = sum_i c_i eps_{t-i} with iid stable(1, alpha, kappa) noise.
struct StableMaProcess {
  std::vector<double> coeffs{1.0};
  double alpha = 1.5;
  double kappa = 0.0;
};

using Process = std::variant<CorrelationModel, CrossCorrelationModel, ChernickProcess, StableMaProcess>;

// Pair matrices (joint, consecutive and T(2)/T(3) counts) are kept only up to this length.
inline constexpr int kPairLimit = 64;

struct SimStudy {
  Process process = CorrelationModel::iid();
  int n = 10;
  std::size_t n_paths = 1000;
  std::uint64_t seed = 0;
  // Strictly increasing map applied to every coordinate before records are taken.
  std::function<double(double)> margin;

  bool keep_indicators = false;
  bool keep_increments = true;
  bool keep_maxima = false;
  // Record values at indices lo..hi (1-based, inclusive) are collected; lo = 0 disables.
  std::pair<int, int> value_window{0, 0};
};

struct EmpiricalRecordStats {
  int n = 0;
  int d = 1;
  std::size_t n_paths = 0;

  // Entry t - 1 refers to time t. Multivariate processes count complete records.
  std::vector<std::uint64_t> record_counts;
  // Chernick only: sum over paths of P(R_t | X_1..X_{t-1}).
  std::vector<double> rb_sum;
  std::vector<std::uint64_t> t2_counts;
  std::vector<std::uint64_t> t3_counts;
  // n x n row-major, filled when n <= kPairLimit. Entry (j-1, k-1) with j < k.
  std::vector<std::uint64_t> pair_counts;         // R_j R_k
  std::vector<std::uint64_t> consecutive_counts;  // R_j R_k, no record in between
  std::vector<std::uint64_t> t2t3_counts;         // T(2) = j, T(3) = k
  double records_sum = 0.0;                       // per-path record counts
  double records_sumsq = 0.0;

  std::vector<double> increment1;  // X_{T(2)} - X_1 where T(2) <= n
  std::vector<double> increment2;  // X_{T(3)} - X_{T(2)} where T(3) <= n
  std::vector<std::pair<int, double>> record_values;
  std::vector<double> maxima;           // max_{t <= n} X_t per path (univariate)
  std::vector<std::uint8_t> indicators;  // n_paths x n row-major

  // SEs need at least two paths.
  [[nodiscard]] bool se_defined() const { return n_paths > 1; }
  [[nodiscard]] double rate(int t) const;
  [[nodiscard]] double rate_se(int t) const;
  [[nodiscard]] double rb_rate(int t) const;
  [[nodiscard]] double t2_rate(int t) const;
  [[nodiscard]] double t3_rate(int t) const;
  [[nodiscard]] double pair_rate(int j, int k) const;
  [[nodiscard]] double consecutive_rate(int j, int k) const;
  [[nodiscard]] double t2t3_rate(int j, int k) const;
  [[nodiscard]] double expected_records() const;
  [[nodiscard]] double expected_records_se() const;
};

// Binomial standard error sqrt(p (1 - p) / paths).
double binomial_se(double p, std::size_t paths);

EmpiricalRecordStats simulate_records(const SimStudy& study);
// Record values are collected on the window [n/2, n].
EmpiricalRecordStats simulate_chernick(int m, int n, std::size_t n_paths, std::uint64_t seed);
// Keeps per-path maxima; divide by n^{1/alpha} for the normalized maximum.
EmpiricalRecordStats simulate_stable_ma(const std::vector<double>& coeffs, double alpha, double kappa, int n,
                                        std::size_t n_paths, std::uint64_t seed);

// Paths first..first+count-1 of the study, one row each (component-major
// columns for multivariate processes), after the margin transform.
Matrix sample_paths(const SimStudy& study, std::size_t count, std::size_t first = 0);

// Stable draws with characteristic function exp(-|x|^alpha (1 - i kappa h(x, alpha) sign x)),
// h = tan(pi alpha / 2) for alpha != 1 and (2/pi) log|x| for alpha = 1.
double sample_stable(double alpha, double kappa, Rng& rng);
std::vector<double> sample_stable(double alpha, double kappa, std::size_t count, std::uint64_t seed);

// Runs estimator: exceedances of the pooled q-quantile followed by r
// non-exceedances, divided by all exceedances. The interval is a
// 200-resample bootstrap over paths (rows).
ExtremalIndex empirical_extremal_index(const Matrix& paths, int r = 3, double q = 0.95, std::uint64_t seed = 0);

}  // namespace recordlab
