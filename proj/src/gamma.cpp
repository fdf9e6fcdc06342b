#include "recordlab/gamma.hpp"

#include "recordlab/error.hpp"

#include <cmath>
#include <string>

namespace recordlab {

GammaConstruction::GammaConstruction(const Matrix& corr_in, Index cond,
                                     const std::function<Bound(int index)>& bound)
    : cond_(std::move(cond)) {
  const Matrix corr = symmetrized(corr_in);
  const int dim = static_cast<int>(corr.rows());
  require(!cond_.empty(), ErrorKind::EmptyPartition, "conditioning set is empty");
  comp_ = complement(cond_, dim);
  const int q = static_cast<int>(cond_.size());
  const int c = static_cast<int>(comp_.size());

  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      require(std::abs(corr(i, j)) < 1.0 - 1e-12, ErrorKind::DegenerateCorrelation,
              "correlation between X_" + std::to_string(i + 1) + " and X_" + std::to_string(j + 1) +
                  " is +-1");

  b_ = Matrix::Zero(c, q);
  offset_ = Vector::Zero(c);
  for (int k = 0; k < c; ++k) {
    const Bound bd = bound(comp_[k]);
    if (bd.kind == Bound::Kind::Below) {
      require(bd.pos >= 0 && bd.pos < q, ErrorKind::InvalidArgument, "bound position out of range");
      b_(k, bd.pos) = 1.0;
    }
    offset_(k) = bd.offset;
  }

  sigma_ii_ = select(corr, cond_, cond_);
  if (c == 0) {
    cholesky(sigma_ii_);
    cond_corr_ = Matrix(0, 0);
    sd_ = Vector(0);
    varrho_ = Matrix(0, q);
    gamma_ = Matrix(0, 0);
    return;
  }
  const ConditionalGaussian cg = condition(corr, cond_);
  cond_corr_ = cg.cond_corr;
  sd_ = cg.std_diag;
  varrho_ = sd_.asDiagonal().inverse() * (b_ - cg.mean_map);
  gamma_ = cond_corr_ + varrho_ * sigma_ii_ * varrho_.transpose();
  gamma_ = (gamma_ + gamma_.transpose()) / 2.0;
}

Matrix GammaConstruction::gamma_bar() const { return gamma_.rows() ? standardize(gamma_) : gamma_; }

CsnParams GammaConstruction::latent() const {
  const Vector mu = comp_.empty() ? Vector(0) : Vector(-(sd_.asDiagonal().inverse() * offset_));
  return CsnParams::make(Vector::Zero(cond_.size()), sigma_ii_, varrho_, mu, cond_corr_);
}

MvnResult GammaConstruction::probability(const MvnOptions& opt) const {
  return csn_normalizer(latent(), opt);
}

MvnResult GammaConstruction::mass(const Matrix& a, const Vector& t, const MvnOptions& opt) const {
  require(a.cols() == static_cast<Eigen::Index>(cond_.size()) && t.size() == a.rows(),
          ErrorKind::InvalidArgument, "event map dimensions disagree");
  if (a.rows() == 0) return probability(opt);
  const CsnParams mapped = csn_affine(a, Vector::Zero(a.rows()), latent());
  return csn_joint(t, mapped, opt);
}

}  // namespace recordlab
