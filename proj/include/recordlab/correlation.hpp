#pragma once

#include "recordlab/types.hpp"

#include <string>
#include <vector>

namespace recordlab {

enum class TailRule {
  Zero,       // rho_h = 0 beyond the table
  Geometric,  // continue with the ratio of the last two entries
  Truncate,   // no expansion beyond the table (horizon = H + 1)
};

// Autocorrelation of a stationary standard Gaussian sequence, expandable to
// the n x n correlation matrix of (X_1, ..., X_n).
class CorrelationModel {
 public:
  enum class Kind { Iid, Ar1, Equicorrelated, Tabulated, Explicit, UnitGamma };

  static CorrelationModel iid();
  static CorrelationModel ar1(double phi);
  static CorrelationModel equicorrelated(double rho);
  // rhos[h-1] = rho_h for h = 1..H.
  static CorrelationModel tabulated(std::vector<double> rhos, TailRule tail = TailRule::Zero);
  // Fixed matrix; horizon equals its dimension.
  static CorrelationModel explicit_matrix(const Matrix& m);
  // Non-stationary family with rho_{i,n} = r and rho_{i,j} = 2r - 1 for i, j < n,
  // for which the standardized record Gamma is the identity. Positive definite
  // for n - 1 < 2/(1 - r).
  static CorrelationModel unit_gamma(double r);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool stationary() const { return kind_ != Kind::Explicit && kind_ != Kind::UnitGamma; }
  // Largest n for which matrix(n) is defined.
  [[nodiscard]] int horizon() const;
  // Autocorrelation at lag h >= 0 (stationary kinds only).
  [[nodiscard]] double rho(int lag) const;
  // Correlation matrix of X_1..X_n; raises NotPositiveDefinite when invalid.
  [[nodiscard]] Matrix matrix(int n) const;
  [[nodiscard]] std::string describe() const;

 private:
  Kind kind_ = Kind::Iid;
  double param_ = 0.0;
  std::vector<double> table_;
  TailRule tail_ = TailRule::Zero;
  Matrix explicit_;
};

}  // namespace recordlab
