#pragma once

#include "recordlab/types.hpp"

#include <cstdint>
#include <optional>

namespace recordlab {

struct MvnProblem {
  Vector lower;
  Vector upper;
  Vector mean;  // empty means zero
  Matrix cov;
};

struct MvnResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t points_used = 0;
  bool converged = true;
  int dim = 0;  // effective dimension after dropping unbounded coordinates
};

struct MvnOptions {
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int max_dim = 30;
  std::size_t max_points = std::size_t{1} << 22;
  int shifts = 12;
  double jitter = 0.0;

  static MvnOptions from(const NumericOptions& o) {
    MvnOptions m;
    m.tol = o.tol;
    m.seed = o.seed;
    m.max_dim = o.max_dim;
    m.max_points = o.max_points;
    return m;
  }
};

double default_tolerance(int dim);

// P(lower < X <= upper) for X ~ N(mean, cov). Dimensions 1 and 2 are
// deterministic; higher dimensions use a randomized lattice rule after the
// separation-of-variables transform with Genz-Bretz variable reordering.
// abs_error is three standard errors over the random shifts.
MvnResult mvn_cdf(const MvnProblem& p, const MvnOptions& opt = {});

// P(X <= upper) for X ~ N(0, cov).
MvnResult mvn_orthant(const Vector& upper, const Matrix& cov, const MvnOptions& opt = {});

// n_paths x dim matrix of iid draws; row i uses RNG stream i.
Matrix mvn_sample(std::size_t n_paths, const Vector& mean, const Matrix& cov, std::uint64_t seed);

}  // namespace recordlab
