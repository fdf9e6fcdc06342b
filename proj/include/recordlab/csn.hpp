#pragma once

#include "recordlab/mvn.hpp"
#include "recordlab/types.hpp"

#include <cstdint>
#include <string>

namespace recordlab {

// Closed skew-normal CSN_{m,n}(xi, Omega, Delta, mu, Sigma) with density
//   phi_m(x - xi; Omega) Phi_n(Delta (x - xi); mu, Sigma) / Phi_n(0; mu, Gamma),
// Gamma = Sigma + Delta Omega Delta^T. A latent dimension n = 0 is allowed and
// gives the plain Gaussian N_m(xi, Omega).
struct CsnParams {
  Vector xi;
  Matrix omega;  // m x m
  Matrix delta;  // n x m
  Vector mu;     // n
  Matrix sigma;  // n x n

  [[nodiscard]] int m() const { return static_cast<int>(omega.rows()); }
  [[nodiscard]] int n() const { return static_cast<int>(sigma.rows()); }
  [[nodiscard]] Matrix gamma() const { return sigma + delta * omega * delta.transpose(); }

  // Validates dimensions and positive definiteness of Omega, Sigma, Gamma.
  static CsnParams make(Vector xi, Matrix omega, Matrix delta, Vector mu, Matrix sigma);
  // Psi_{m,n}(x; Delta, Sigma): xi = 0, Omega = I, mu = 0.
  static CsnParams standard(const Matrix& delta, const Matrix& sigma);
  // xi = 0 with general Omega and mu.
  static CsnParams centered(Matrix omega, Matrix delta, Vector mu, Matrix sigma);
};

// Phi_n(0; mu, Gamma), the normalizing constant and the sampler's acceptance rate.
MvnResult csn_normalizer(const CsnParams& p, const MvnOptions& opt = {});

// Unnormalized lower-orthant mass Phi_{n+m}(x~; Omega~) with x~ = (-mu, x - xi)
// and Omega~ = [[Gamma, -Delta Omega], [-Omega Delta^T, Omega]]. Entries of x
// may be +inf.
MvnResult csn_joint(const Vector& x, const CsnParams& p, const MvnOptions& opt = {});

Estimate csn_pdf(const Vector& x, const CsnParams& p, const MvnOptions& opt = {});
Estimate csn_cdf(const Vector& x, const CsnParams& p, const MvnOptions& opt = {});

// Law of A X + b. A must have full row rank.
CsnParams csn_affine(const Matrix& a, const Vector& b, const CsnParams& p);

struct CsnSample {
  Matrix draws;               // n_paths x m
  std::uint64_t attempts = 0; // total proposals
  double acceptance = 1.0;    // Phi_n(0; mu, Gamma)
};

// Rejection sampler: U ~ N(xi, Omega), V ~ N(0, Sigma), keep U when
// Delta (U - xi) + V > mu componentwise. Raises AcceptanceTooLow below 1e-4.
CsnSample csn_sample(std::size_t n_paths, const CsnParams& p, std::uint64_t seed);

std::string csn_to_json(const CsnParams& p);
CsnParams csn_from_json(const std::string& text);

}  // namespace recordlab
