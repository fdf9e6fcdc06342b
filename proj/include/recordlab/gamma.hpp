#pragma once

#include "recordlab/csn.hpp"
#include "recordlab/linalg.hpp"
#include "recordlab/mvn.hpp"

#include <functional>
#include <vector>

namespace recordlab {

// Constraint on a non-conditioning coordinate X_c:
//   Below: X_c < X_{cond[pos]} + offset
//   Free:  X_c < offset
struct Bound {
  enum class Kind { Below, Free } kind = Kind::Below;
  int pos = 0;
  double offset = 0.0;

  static Bound below(int pos) { return {Kind::Below, pos, 0.0}; }
  static Bound free(double threshold) { return {Kind::Free, 0, threshold}; }
};

// Record-type event for X ~ N(0, corr):
//   { X_c < B X_I + offset for every c outside I },
// with I the conditioning indices in caller order and the complement in
// ascending order. Conditioning on X_I = z and standardizing gives
//   varrho = sigma^{-1} (B - Sigma_{c,I} Sigma_{I,I}^{-1}),
//   Gamma  = Sigma-bar_{c,c;I} + varrho Sigma_{I,I} varrho^T,
// and the event mass jointly with {A X_I <= t} is an unnormalized CSN cdf.
class GammaConstruction {
 public:
  GammaConstruction(const Matrix& corr, Index cond, const std::function<Bound(int index)>& bound);

  [[nodiscard]] const Index& cond() const { return cond_; }
  [[nodiscard]] const Index& comp() const { return comp_; }
  [[nodiscard]] const Matrix& b() const { return b_; }
  [[nodiscard]] const Vector& offset() const { return offset_; }
  [[nodiscard]] const Matrix& sigma_cond() const { return sigma_ii_; }  // Sigma_{I,I}
  [[nodiscard]] const Matrix& cond_corr() const { return cond_corr_; }  // Sigma-bar_{c,c;I}
  [[nodiscard]] const Vector& cond_sd() const { return sd_; }
  [[nodiscard]] const Matrix& varrho() const { return varrho_; }
  [[nodiscard]] const Matrix& gamma() const { return gamma_; }
  // Gamma rescaled to unit diagonal.
  [[nodiscard]] Matrix gamma_bar() const;

  // Law of X_I restricted to the event, as CSN(0, Sigma_{I,I}, varrho, -sigma^{-1} offset, Sigma-bar).
  [[nodiscard]] CsnParams latent() const;

  // P(event).
  [[nodiscard]] MvnResult probability(const MvnOptions& opt) const;
  // P(event, A X_I <= t). A needs full row rank; t may contain +inf.
  [[nodiscard]] MvnResult mass(const Matrix& a, const Vector& t, const MvnOptions& opt) const;
  // Integral dimension of mass() with `rows` rows in A.
  [[nodiscard]] int dim(int rows) const { return static_cast<int>(comp_.size()) + rows; }

 private:
  Index cond_;
  Index comp_;
  Matrix b_;
  Vector offset_;
  Matrix sigma_ii_;
  Matrix cond_corr_;
  Vector sd_;
  Matrix varrho_;
  Matrix gamma_;
};

}  // namespace recordlab
