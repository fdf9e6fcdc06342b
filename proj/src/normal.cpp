#include "recordlab/normal.hpp"

#include <boost/math/policies/policy.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace recordlab {

namespace {

using FastPolicy = boost::math::policies::policy<boost::math::policies::promote_double<false>>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

double norm_sf(double x) { return 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0); }

double norm_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p, FastPolicy());
}

double bvn_upper(double h, double k, double r) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();

  double hk = h * k;
  double bvn = 0.0;
  if (std::abs(r) < 0.925) {
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(r);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double sn = std::sin(asr * (sign * x[i] + 1.0) / 2.0);
        bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    // Rule weights sum to 2 over [-1, 1]; the substitution halves the range.
    return bvn * asr / (2.0 * kTwoPi) + norm_sf(h) * norm_sf(k);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (std::abs(r) < 1.0) {
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-(bs / as + hk) / 2.0) *
          (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (hk > -160.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * norm_cdf(-b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double xs = std::pow(a * (sign * x[i] + 1.0), 2);
        const double rs = std::sqrt(1.0 - xs);
        bvn += a * w[i] *
               (std::exp(-bs / (2.0 * xs) - hk / (1.0 + rs)) / rs -
                std::exp(-(bs / xs + hk) / 2.0) * (1.0 + c * xs * (1.0 + d * xs)));
      }
    }
    bvn = -bvn / kTwoPi;
  }
  if (r > 0.0) return bvn + norm_sf(std::max(h, k));
  bvn = -bvn;
  if (k > h) {
    // Here k holds -k_original.
    bvn += (h < 0.0) ? norm_cdf(k) - norm_cdf(h) : norm_sf(h) - norm_sf(k);
  }
  return std::max(0.0, bvn);
}

double bvn_cdf(double x, double y, double r) {
  if (x == -std::numeric_limits<double>::infinity() || y == -std::numeric_limits<double>::infinity())
    return 0.0;
  if (std::isinf(x)) return norm_cdf(y);
  if (std::isinf(y)) return norm_cdf(x);
  return std::clamp(bvn_upper(-x, -y, r), 0.0, 1.0);
}

double bvn_rect(double a1, double b1, double a2, double b2, double r) {
  const double p = bvn_cdf(b1, b2, r) - bvn_cdf(a1, b2, r) - bvn_cdf(b1, a2, r) + bvn_cdf(a1, a2, r);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace recordlab
