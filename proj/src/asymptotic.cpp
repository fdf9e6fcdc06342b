#include "recordlab/asymptotic.hpp"

#include "recordlab/error.hpp"
#include "recordlab/linalg.hpp"
#include "recordlab/mvn.hpp"
#include "recordlab/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

namespace recordlab {

namespace {

// -log G(x); +inf below the support, 0 above it.
double neg_log_g(double x, const GevSpec& s) {
  switch (s.family) {
    case GevSpec::Family::Gumbel:
      return std::exp(-x);
    case GevSpec::Family::Frechet:
      require(s.shape > 0, ErrorKind::InvalidArgument, "Frechet alpha must be positive");
      return x <= 0 ? kInf : std::pow(x, -s.shape);
    case GevSpec::Family::NegWeibull:
      require(s.shape > 0, ErrorKind::InvalidArgument, "Weibull beta must be positive");
      return x >= 0 ? 0.0 : std::pow(-x, s.shape);
    case GevSpec::Family::General: {
      if (s.shape == 0.0) return std::exp(-x);
      const double t = 1.0 + s.shape * x;
      if (t <= 0) return s.shape > 0 ? kInf : 0.0;
      return std::pow(t, -1.0 / s.shape);
    }
  }
  return 0.0;
}

}  // namespace

double gev_cdf(double x, const GevSpec& spec, double theta) {
  require(theta > 0, ErrorKind::InvalidArgument, "theta must be positive");
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  return std::exp(-theta * neg_log_g(x, spec));
}

double gev_pdf(double x, const GevSpec& spec, double theta) {
  const double v = neg_log_g(x, spec);
  if (std::isinf(v) || v == 0.0) return 0.0;
  double dv = 0.0;
  switch (spec.family) {
    case GevSpec::Family::Gumbel:
      dv = -v;
      break;
    case GevSpec::Family::Frechet:
      dv = -spec.shape * v / x;
      break;
    case GevSpec::Family::NegWeibull:
      dv = -spec.shape * v / (-x);
      break;
    case GevSpec::Family::General:
      dv = spec.shape == 0.0 ? -v : -v / (1.0 + spec.shape * x);
      break;
  }
  return -theta * dv * std::exp(-theta * v);
}

double asymptotic_record_prob(double theta, int n) {
  require(theta > 0 && theta <= 1, ErrorKind::InvalidArgument, "theta must lie in (0, 1]");
  require(n >= 1, ErrorKind::InvalidArgument, "n must be >= 1");
  return 1.0 / (n * theta);
}

ExtremalIndex chernick_theta(int m) {
  require(m >= 2, ErrorKind::InvalidArgument, "Chernick m must be >= 2");
  const double t = (m - 1.0) / m;
  return {t, 0.0, "analytic-chernick", false, t, t};
}

Norming chernick_norming(int n) { return {1.0 / n, 1.0}; }

double stable_k(double alpha) {
  require(alpha > 0 && alpha <= 2, ErrorKind::InvalidArgument, "alpha must lie in (0, 2]");
  return std::tgamma(alpha) * std::sin(alpha * std::numbers::pi / 2) / std::numbers::pi;
}

ExtremalIndex stable_ma_theta(const std::vector<double>& coeffs, double alpha, double kappa) {
  require(std::abs(kappa) <= 1, ErrorKind::InvalidArgument, "kappa must lie in [-1, 1]");
  double cp = 0.0, cm = 0.0;
  for (double c : coeffs) {
    cp = std::max(cp, c);
    cm = std::max(cm, -c);
  }
  require(cp > 0 || cm > 0, ErrorKind::AllZeroCoefficients, "all moving-average coefficients are zero");
  const double theta =
      stable_k(alpha) * (std::pow(cp, alpha) * (1 + kappa) + std::pow(cm, alpha) * (1 - kappa));
  return {theta, 0.0, "analytic-stable-ma", !(theta > 0 && theta <= 1), theta, theta};
}

Norming stable_norming(int n, double alpha) { return {std::pow(double(n), 1.0 / alpha), 0.0}; }

Norming gaussian_norming(double n) {
  require(n >= 3, ErrorKind::InvalidArgument, "Gaussian norming needs n >= 3");
  const double a = 1.0 / std::sqrt(2.0 * std::log(n));
  const double b = 1.0 / a - a * (std::log(std::log(n)) + std::log(4 * std::numbers::pi)) / 2.0;
  return {a, b};
}

void gauss_laguerre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  require(order >= 1, ErrorKind::InvalidArgument, "quadrature order must be positive");
  Matrix j = Matrix::Zero(order, order);
  for (int i = 0; i < order; ++i) {
    j(i, i) = 2.0 * i + 1.0;
    if (i + 1 < order) j(i, i + 1) = j(i + 1, i) = i + 1.0;
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> es(j);
  nodes.resize(order);
  weights.resize(order);
  for (int i = 0; i < order; ++i) {
    nodes[i] = es.eigenvalues()(i);
    weights[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
}

Matrix hsing_sigma(const std::map<int, double>& deltas) {
  std::vector<int> k;
  for (const auto& [lag, d] : deltas) {
    require(lag >= 1, ErrorKind::InvalidArgument, "delta lags start at 1");
    require(d > 0, ErrorKind::InvalidArgument, "delta values must be positive");
    if (std::isfinite(d)) k.push_back(lag);
  }
  const int n = static_cast<int>(k.size());
  Matrix s = Matrix::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int gap = std::abs(k[a] - k[b]);
      const auto it = deltas.find(gap);
      require(it != deltas.end(), ErrorKind::MissingDelta,
              "delta_" + std::to_string(gap) + " is needed but not supplied");
      const double di = deltas.at(k[a]), dj = deltas.at(k[b]);
      const double v = (di + dj - it->second) / (2.0 * std::sqrt(di * dj));
      require(std::isfinite(v) && std::abs(v) <= 1.0 + 1e-12, ErrorKind::InvalidDeltaMatrix,
              "Sigma entry for lags " + std::to_string(k[a]) + "," + std::to_string(k[b]) +
                  " is not a correlation");
      s(a, b) = s(b, a) = v;
    }
  }
  if (n > 0) {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    require(es.eigenvalues().minCoeff() >= -1e-10, ErrorKind::InvalidDeltaMatrix,
            "Sigma is not positive semi-definite");
  }
  return s;
}

ExtremalIndex hsing_theta(const std::map<int, double>& deltas, double tol, std::uint64_t seed) {
  Matrix sigma = hsing_sigma(deltas);
  const int n = static_cast<int>(sigma.rows());
  ExtremalIndex out{1.0, 0.0, "analytic-hsing", false, 1.0, 1.0};
  if (n == 0) return out;
  std::vector<double> sq;
  for (const auto& [lag, d] : deltas)
    if (std::isfinite(d)) sq.push_back(std::sqrt(d));
  double jitter = 0.0;
  if (!is_positive_definite(sigma)) jitter = 1e-9;  // PSD but singular

  MvnOptions mo;
  mo.seed = seed;
  mo.tol = std::max(1e-8, tol / 10);
  mo.jitter = jitter;
  auto integrand = [&](double u, double& err) {
    Vector upper(n);
    for (int i = 0; i < n; ++i) upper(i) = sq[i] - u / (2.0 * sq[i]);
    const MvnResult r = mvn_orthant(upper, sigma, mo);
    err = r.abs_error;
    return r.value;
  };
  auto rule = [&](int order, double& err) {
    std::vector<double> x, w;
    gauss_laguerre(order, x, w);
    double sum = 0.0;
    err = 0.0;
    for (int i = 0; i < order; ++i) {
      double e = 0.0;
      sum += w[i] * integrand(x[i], e);
      err += w[i] * e;
    }
    return sum;
  };
  double err_prev = 0.0;
  double prev = rule(8, err_prev);
  for (int order = 16; order <= 256; order *= 2) {
    double err = 0.0;
    const double cur = rule(order, err);
    out.theta = cur;
    out.abs_error = std::abs(cur - prev) + err;
    if (std::abs(cur - prev) <= std::max(tol, err + err_prev)) break;
    prev = cur;
    err_prev = err;
  }
  out.flagged = !(out.theta > 0 && out.theta <= 1 + out.abs_error);
  out.ci_low = out.theta - out.abs_error;
  out.ci_high = out.theta + out.abs_error;
  return out;
}

}  // namespace recordlab
