#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>

namespace recordlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A numerically integrated quantity together with its error estimate.
struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

// Knobs shared by every closed-form evaluation. When `tol` is unset the
// per-dimension default of the MVN engine applies.
struct NumericOptions {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int max_dim = 30;
  std::size_t max_points = std::size_t{1} << 22;
};

}  // namespace recordlab
