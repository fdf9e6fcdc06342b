#pragma once

#include "recordlab/correlation.hpp"
#include "recordlab/gamma.hpp"
#include "recordlab/types.hpp"

#include <cstdint>
#include <vector>

namespace recordlab {

// Time indices are 1-based throughout this header: X_1, X_2, ...

struct RecordLaw {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  int dim = 0;  // largest integral dimension used
  std::uint64_t seed = 0;
  double tol = 0.0;  // requested tolerance, 0 when per-dimension defaults applied
};

// Stopping rule for the infinite series. A series converges when `run`
// consecutive terms fall below eps_tail and the geometric tail extrapolation
// is below 10 eps_tail. Otherwise it stops at max_index with status Truncated
// and a residual bound, or throws TailNotConverged if require_convergence.
struct TailPolicy {
  double eps_tail = 1e-7;
  int run = 5;
  int max_index = 0;  // 0: largest index whose integrals fit max_dim (capped for double series)
  bool require_convergence = false;
};

enum class SeriesStatus { Converged, Truncated };

struct SeriesResult {
  double value = 0.0;           // partial sum
  double abs_error = 0.0;       // accumulated integration error
  double residual_bound = 0.0;  // the omitted tail lies in [0, residual_bound]
  int last_index = 0;
  SeriesStatus status = SeriesStatus::Truncated;
  bool converged = true;  // every integral met its tolerance
  std::vector<double> terms;
  int dim = 0;
};

enum class SeriesClass { Divergent, Convergent, Inconclusive };

struct ExpectedRecords {
  SeriesClass classification = SeriesClass::Inconclusive;
  double partial_sum = 0.0;  // 1 + sum_{n=2}^{last} P(R_n)
  double value = 0.0;        // partial sum plus geometric tail when Convergent
  double abs_error = 0.0;
  int last_index = 0;
  std::vector<double> terms;  // P(R_n), n = 2..last
  bool converged = true;
};

const char* to_string(SeriesStatus s);
const char* to_string(SeriesClass c);

// Event {X_i < X_n, i < n} with the standardized Gamma validated entrywise.
GammaConstruction gamma_single(const CorrelationModel& model, int n);

RecordLaw record_probability(const CorrelationModel& model, int n, const NumericOptions& opt = {});
RecordLaw record_value_cdf(const CorrelationModel& model, int n, double x, const NumericOptions& opt = {});

// P(T(2) = j_2, ..., T(k) = j_k) for times = {j_2, ..., j_k}.
RecordLaw arrival_times_joint(const CorrelationModel& model, const std::vector<int>& times,
                              const NumericOptions& opt = {});

// P(X_j = max(X_1..X_m)).
RecordLaw max_at(const CorrelationModel& model, int j, int m, const NumericOptions& opt = {});

RecordLaw second_record_time_pmf(const CorrelationModel& model, int n, const NumericOptions& opt = {});

SeriesResult first_increment_cdf(const CorrelationModel& model, double x, const TailPolicy& policy = {},
                                 const NumericOptions& opt = {});
SeriesResult second_increment_cdf(const CorrelationModel& model, double x, const TailPolicy& policy = {},
                                  const NumericOptions& opt = {});

ExpectedRecords expected_records(const CorrelationModel& model, const TailPolicy& policy = {},
                                 const NumericOptions& opt = {});

RecordLaw consecutive_joint_record_prob(const CorrelationModel& model, int j, int n,
                                        const NumericOptions& opt = {});
RecordLaw consecutive_joint_record_cdf(const CorrelationModel& model, int j, int n, double x1, double x2,
                                       const NumericOptions& opt = {});

RecordLaw joint_record_prob(const CorrelationModel& model, int j, int n, const NumericOptions& opt = {});
RecordLaw joint_record_cdf(const CorrelationModel& model, int j, int n, double x1, double x2,
                           const NumericOptions& opt = {});

enum class Marginal { AtJ, AtN };
RecordLaw joint_record_marginal(const CorrelationModel& model, int j, int n, double x, Marginal which,
                                const NumericOptions& opt = {});

}  // namespace recordlab
