#pragma once

#include "recordlab/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace recordlab {

// GEV family G_gamma. Gumbel: exp(-e^{-x}); Frechet(alpha): exp(-x^{-alpha}),
// x > 0; NegWeibull(beta): exp(-(-x)^beta), x < 0; General(gamma):
// exp(-(1 + gamma x)^{-1/gamma}) on 1 + gamma x > 0.
struct GevSpec {
  enum class Family { Gumbel, Frechet, NegWeibull, General } family = Family::Gumbel;
  double shape = 0.0;  // alpha, beta or gamma depending on the family

  static GevSpec gumbel() { return {}; }
  static GevSpec frechet(double alpha) { return {Family::Frechet, alpha}; }
  static GevSpec neg_weibull(double beta) { return {Family::NegWeibull, beta}; }
  static GevSpec general(double gamma) { return {Family::General, gamma}; }
};

// Norming constants: P(M_n <= a x + b) -> G(x)^theta.
struct Norming {
  double a = 1.0;
  double b = 0.0;
};

// G(x)^theta, theta > 0.
double gev_cdf(double x, const GevSpec& spec, double theta = 1.0);
double gev_pdf(double x, const GevSpec& spec, double theta = 1.0);

// Large-n approximation 1/(n theta) of P(R_n = 1); not an exact law.
double asymptotic_record_prob(double theta, int n);

struct ExtremalIndex {
  double theta = 1.0;
  double abs_error = 0.0;
  std::string provenance;  // analytic-chernick, analytic-stable-ma, analytic-hsing, empirical
  bool flagged = false;    // outside (0, 1]
  // Bootstrap percentile interval (empirical estimates only).
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// AR(1) with uniform innovations on {0, 1/m, ..., (m-1)/m}: theta = (m-1)/m,
// norming a_n = 1/n, b_n = 1, limit exp(theta x) for x < 0.
ExtremalIndex chernick_theta(int m);
Norming chernick_norming(int n);

// k_alpha (c_+^alpha (1 + kappa) + c_-^alpha (1 - kappa)) with
// k_alpha = Gamma(alpha) sin(alpha pi / 2) / pi. This is the constant of the
// limit exp(-theta x^{-alpha}) under norming n^{1/alpha} and is not clamped.
ExtremalIndex stable_ma_theta(const std::vector<double>& coeffs, double alpha, double kappa);
double stable_k(double alpha);
Norming stable_norming(int n, double alpha);

// E_U Phi_{|K|}(sqrt(delta_k) - U / (2 sqrt(delta_k)), k in K; Sigma) with U
// standard exponential, K = {k : delta_k < inf} and
// Sigma_ij = (delta_i + delta_j - delta_|i-j|) / (2 sqrt(delta_i delta_j)).
// Gauss-Laguerre order doubles until successive orders agree within tol.
ExtremalIndex hsing_theta(const std::map<int, double>& deltas, double tol = 1e-6, std::uint64_t seed = 0);
// The matrix Sigma for the finite part of `deltas` (MissingDelta/InvalidDeltaMatrix).
Matrix hsing_sigma(const std::map<int, double>& deltas);

// a_n = (2 log n)^{-1/2}, b_n = 1/a_n - a_n (log log n + log 4 pi) / 2, n >= 3.
Norming gaussian_norming(double n);

// Gauss-Laguerre nodes and weights (weight e^{-u} on (0, inf)) by Golub-Welsch.
void gauss_laguerre(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace recordlab
