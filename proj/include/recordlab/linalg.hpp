#pragma once

#include "recordlab/types.hpp"

#include <vector>

namespace recordlab {

// Library index sets are 0-based; the CLI translates from 1-based input.
using Index = std::vector<int>;

// Returns (m + m^T)/2 when m is symmetric within 1e-12 relative tolerance,
// InvalidArgument otherwise.
Matrix symmetrized(const Matrix& m);

// Lower Cholesky factor with positive diagonal. Throws NotPositiveDefinite
// naming the 1-based leading minor that failed. `jitter` adds jitter*I first
// and defaults to zero.
Matrix cholesky(const Matrix& m, double jitter = 0.0);

bool is_positive_definite(const Matrix& m);

// Checks a correlation matrix: symmetric, unit diagonal, entries in [-1, 1].
// Positive definiteness is checked separately by cholesky().
void check_correlation(const Matrix& m);

Matrix select(const Matrix& m, const Index& rows, const Index& cols);
Vector select(const Vector& v, const Index& idx);

// Ascending complement of `idx` in {0..dim-1}.
Index complement(const Index& idx, int dim);

// Rescales a covariance to unit diagonal. `sd` receives the square roots of
// the diagonal when non-null.
Matrix standardize(const Matrix& cov, Vector* sd = nullptr);

struct ConditionalGaussian {
  Index cond_idx;   // as given
  Index comp_idx;   // ascending complement
  Matrix mean_map;  // Sigma_{c,I} Sigma_{I,I}^{-1}
  Matrix cond_cov;  // Sigma_{c,c} - mean_map Sigma_{I,c}
  Vector std_diag;  // sqrt(diag(cond_cov))
  Matrix cond_corr; // cond_cov standardized
};

// Law of X_c given X_I for X ~ N(0, full). cond_idx must be a non-empty
// proper subset (EmptyPartition otherwise).
ConditionalGaussian condition(const Matrix& full, const Index& cond_idx);

}  // namespace recordlab
