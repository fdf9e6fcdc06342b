#include "recordlab/linalg.hpp"

#include "recordlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace recordlab {

Matrix symmetrized(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorKind::InvalidArgument, "matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12 * scale, ErrorKind::InvalidArgument,
          "matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  return (m + m.transpose()) / 2.0;
}

Matrix cholesky(const Matrix& m_in, double jitter) {
  Matrix m = symmetrized(m_in);
  const Eigen::Index n = m.rows();
  if (jitter > 0.0) m.diagonal().array() += jitter;
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = m(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 1e-14 * std::max(1.0, std::abs(m(j, j))))) {
      raise(ErrorKind::NotPositiveDefinite,
            "leading minor " + std::to_string(j + 1) + " is not positive");
    }
    d = std::sqrt(d);
    l(j, j) = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / d;
    }
  }
  return l;
}

bool is_positive_definite(const Matrix& m) {
  try {
    cholesky(m);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void check_correlation(const Matrix& m) {
  const Matrix s = symmetrized(m);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    require(std::abs(s(i, i) - 1.0) <= 1e-12, ErrorKind::InvalidArgument,
            "correlation diagonal must be 1");
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      require(std::abs(s(i, j)) <= 1.0 + 1e-12, ErrorKind::InvalidArgument,
              "correlation entries must lie in [-1, 1]");
    }
  }
}

Matrix select(const Matrix& m, const Index& rows, const Index& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

Vector select(const Vector& v, const Index& idx) {
  Vector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

Index complement(const Index& idx, int dim) {
  std::vector<bool> used(dim, false);
  for (int i : idx) {
    require(i >= 0 && i < dim, ErrorKind::InvalidArgument, "index out of range");
    require(!used[i], ErrorKind::InvalidArgument, "duplicate index");
    used[i] = true;
  }
  Index out;
  for (int i = 0; i < dim; ++i)
    if (!used[i]) out.push_back(i);
  return out;
}

Matrix standardize(const Matrix& cov, Vector* sd) {
  Vector s = cov.diagonal().array().sqrt();
  require((s.array() > 0.0).all(), ErrorKind::NotPositiveDefinite,
          "covariance has a non-positive diagonal entry");
  Matrix out = s.asDiagonal().inverse() * cov * s.asDiagonal().inverse();
  out = (out + out.transpose()) / 2.0;
  out.diagonal().setOnes();
  if (sd) *sd = s;
  return out;
}

ConditionalGaussian condition(const Matrix& full_in, const Index& cond_idx) {
  const Matrix full = symmetrized(full_in);
  const int dim = static_cast<int>(full.rows());
  require(!cond_idx.empty(), ErrorKind::EmptyPartition, "conditioning set is empty");
  ConditionalGaussian out;
  out.cond_idx = cond_idx;
  out.comp_idx = complement(cond_idx, dim);
  require(!out.comp_idx.empty(), ErrorKind::EmptyPartition, "conditioning set covers every index");
  cholesky(full);

  const Matrix s_ii = select(full, cond_idx, cond_idx);
  const Matrix s_ci = select(full, out.comp_idx, cond_idx);
  const Matrix s_cc = select(full, out.comp_idx, out.comp_idx);
  const Eigen::LLT<Matrix> llt(s_ii);
  out.mean_map = llt.solve(s_ci.transpose()).transpose();
  out.cond_cov = s_cc - out.mean_map * s_ci.transpose();
  out.cond_cov = (out.cond_cov + out.cond_cov.transpose()) / 2.0;
  out.cond_corr = standardize(out.cond_cov, &out.std_diag);
  return out;
}

}  // namespace recordlab
