#pragma once

#include "recordlab/correlation.hpp"
#include "recordlab/records.hpp"
#include "recordlab/types.hpp"

#include <string>
#include <vector>

namespace recordlab {

// Stationary d-variate standard Gaussian sequence. block(h) is the d x d
// matrix Cov(X_s, X_{s+h}); block(0) has unit diagonal.
class CrossCorrelationModel {
 public:
  enum class Kind { Independent, Separable, Tabulated };

  // Components are independent univariate sequences.
  static CrossCorrelationModel independent(std::vector<CorrelationModel> components);
  // block(h) = rho(h) * cross, with cross a correlation matrix.
  static CrossCorrelationModel separable(const CorrelationModel& temporal, const Matrix& cross);
  // blocks[h] for h = 0..H, zero beyond H.
  static CrossCorrelationModel tabulated(std::vector<Matrix> blocks);
  static CrossCorrelationModel univariate(const CorrelationModel& model) { return independent({model}); }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int dim() const { return d_; }
  [[nodiscard]] int horizon() const;
  [[nodiscard]] Matrix block(int lag) const;
  // Covariance of (X_1, ..., X_n) in component-major order: entry c * n + t
  // holds component c at time t + 1. Raises NotPositiveDefinite.
  [[nodiscard]] Matrix matrix(int n) const;
  [[nodiscard]] std::string describe() const;

 private:
  Kind kind_ = Kind::Independent;
  int d_ = 1;
  std::vector<CorrelationModel> components_;
  CorrelationModel temporal_;
  Matrix cross_;
  std::vector<Matrix> blocks_;
};

// Position of component c (0-based) at time t (1-based) in the stacked vector.
inline int stacked_index(int c, int t, int n) { return c * n + (t - 1); }

// P(X_n is a complete record): every component beats its own history.
RecordLaw complete_record_prob(const CrossCorrelationModel& model, int n, const NumericOptions& opt = {});
// P(X_n <= x componentwise | complete record at n).
RecordLaw complete_record_cdf(const CrossCorrelationModel& model, int n, const Vector& x,
                              const NumericOptions& opt = {});
// P(complete records at j and n), 1 <= j < n.
RecordLaw joint_complete_record_prob(const CrossCorrelationModel& model, int j, int n,
                                     const NumericOptions& opt = {});
// P(X_j <= x1, X_n <= x2 | complete records at j and n). Sums 3^d CSN terms;
// d > 4 raises SubsetExplosion.
RecordLaw joint_complete_record_cdf(const CrossCorrelationModel& model, int j, int n, const Vector& x1,
                                    const Vector& x2, const NumericOptions& opt = {});

}  // namespace recordlab
