#include <doctest.h>

#include "recordlab/asymptotic.hpp"
#include "recordlab/error.hpp"
#include "recordlab/normal.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace recordlab;

TEST_CASE("gev: families at reference points") {
  CHECK(gev_cdf(0.0, GevSpec::gumbel()) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(gev_cdf(1.0, GevSpec::frechet(1.5)) == doctest::Approx(std::exp(-1.0)));
  CHECK(gev_cdf(-1.0, GevSpec::neg_weibull(2.0)) == doctest::Approx(std::exp(-1.0)));
  CHECK(gev_cdf(-0.5, GevSpec::frechet(1.5)) == 0.0);
  CHECK(gev_cdf(0.5, GevSpec::neg_weibull(2.0)) == 1.0);
  CHECK(gev_cdf(kInf, GevSpec::gumbel()) == 1.0);
  CHECK(gev_cdf(-kInf, GevSpec::gumbel()) == 0.0);
  CHECK_THROWS_AS(gev_cdf(0.0, GevSpec::gumbel(), 0.0), Error);
}

TEST_CASE("gev: general shape reproduces the sub-families") {
  for (double g : {0.25, 0.5, 1.0}) {
    const double alpha = 1.0 / g;
    for (double x : {0.3, 1.0, 2.5, 7.0}) {
      // G_gamma((x - 1) / gamma) is Frechet with alpha = 1/gamma.
      CHECK(gev_cdf((x - 1) / g, GevSpec::general(g)) == doctest::Approx(gev_cdf(x, GevSpec::frechet(alpha))));
    }
  }
  for (double g : {-0.25, -0.5, -2.0}) {
    const double beta = -1.0 / g;
    for (double x : {-3.0, -1.0, -0.2}) {
      CHECK(gev_cdf(-(x + 1) / g, GevSpec::general(g)) == doctest::Approx(gev_cdf(x, GevSpec::neg_weibull(beta))));
    }
  }
  for (double x : {-2.0, 0.0, 3.0})
    CHECK(gev_cdf(x, GevSpec::general(1e-9)) == doctest::Approx(gev_cdf(x, GevSpec::gumbel())).epsilon(1e-7));
}

TEST_CASE("gev: power and density") {
  for (double th : {0.2, 0.5, 1.0}) {
    for (double x : {-1.0, 0.5, 2.0}) {
      const double g = gev_cdf(x, GevSpec::gumbel());
      CHECK(gev_cdf(x, GevSpec::gumbel(), th) == doctest::Approx(std::pow(g, th)));
    }
  }
  const GevSpec specs[] = {GevSpec::gumbel(), GevSpec::frechet(1.5), GevSpec::neg_weibull(2.0),
                           GevSpec::general(0.3)};
  for (const auto& s : specs) {
    for (double x : {-0.7, 0.4, 1.3}) {
      const double h = 1e-5;
      const double fd = (gev_cdf(x + h, s, 0.6) - gev_cdf(x - h, s, 0.6)) / (2 * h);
      CHECK(gev_pdf(x, s, 0.6) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("asymptotic record probability") {
  CHECK(asymptotic_record_prob(0.5, 10) == doctest::Approx(0.2));
  CHECK(asymptotic_record_prob(1.0, 1) == 1.0);
  CHECK_THROWS_AS(asymptotic_record_prob(0.0, 3), Error);
  CHECK_THROWS_AS(asymptotic_record_prob(1.5, 3), Error);
}

TEST_CASE("chernick theta") {
  CHECK(chernick_theta(2).theta == 0.5);
  CHECK(chernick_theta(4).theta == 0.75);
  CHECK(chernick_theta(4).provenance == "analytic-chernick");
  CHECK_THROWS_AS(chernick_theta(1), Error);
  const Norming nm = chernick_norming(50);
  CHECK(nm.a == doctest::Approx(0.02));
  CHECK(nm.b == 1.0);
}

TEST_CASE("stable moving-average theta") {
  const double pi = std::numbers::pi;
  CHECK(stable_k(1.0) == doctest::Approx(1.0 / pi));
  // Cauchy, one unit coefficient, symmetric.
  CHECK(stable_ma_theta({1.0}, 1.0, 0.0).theta == doctest::Approx(1.0 / pi));
  CHECK(stable_ma_theta({1.0, 0.5}, 1.0, 0.0).theta == doctest::Approx(1.0 / pi));
  CHECK(stable_ma_theta({1.0}, 1.0, 1.0).theta == doctest::Approx(2.0 / pi));
  CHECK(stable_ma_theta({0.5, -1.0}, 1.0, 1.0).theta == doctest::Approx(1.0 / pi));
  const double k15 = std::tgamma(1.5) * std::sin(0.75 * pi) / pi;
  CHECK(stable_ma_theta({0.5, 1.0, -0.25}, 1.5, 0.0).theta == doctest::Approx(k15 * (1 + std::pow(0.25, 1.5))));
  CHECK(stable_ma_theta({1.0, 0.5}, 1.5, 0.0).theta == doctest::Approx(k15));
  CHECK_THROWS_AS(stable_ma_theta({0.0, 0.0}, 1.5, 0.0), Error);
  CHECK_THROWS_AS(stable_ma_theta({1.0}, 2.5, 0.0), Error);
  CHECK_THROWS_AS(stable_ma_theta({1.0}, 1.5, 1.2), Error);
  // Large coefficients push theta above one; it is reported, not clamped.
  const auto big = stable_ma_theta({10.0}, 1.0, 0.0);
  CHECK(big.theta > 1.0);
  CHECK(big.flagged);
}

TEST_CASE("gauss-laguerre rule") {
  std::vector<double> x, w;
  gauss_laguerre(12, x, w);
  // Exact for polynomials up to degree 23: int u^k e^{-u} = k!.
  for (int k = 0; k <= 10; ++k) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    CHECK(s == doctest::Approx(std::tgamma(k + 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("hsing theta against quadrature") {
  using boost::math::quadrature::exp_sinh;
  using boost::math::quadrature::gauss_kronrod;
  auto f1 = [](double u) { return std::exp(-u) * norm_cdf(1.0 - u / 2.0); };
  const double o1 = exp_sinh<double>().integrate(f1);
  const double o2 = gauss_kronrod<double, 61>::integrate(f1, 0.0, kInf, 15, 1e-12);
  REQUIRE(std::abs(o1 - o2) < 1e-9);
  const auto r = hsing_theta({{1, 1.0}}, 1e-8);
  CHECK(r.theta == doctest::Approx(o1).epsilon(1e-6));
  CHECK(r.provenance == "analytic-hsing");

  // Two lags: delta_1 = 1, delta_2 = 2 gives Sigma_12 = (1 + 2 - 1) / (2 sqrt 2).
  const double rho = 2.0 / (2.0 * std::sqrt(2.0));
  auto f2 = [&](double u) {
    return std::exp(-u) * bvn_cdf(1.0 - u / 2.0, std::sqrt(2.0) - u / (2.0 * std::sqrt(2.0)), rho);
  };
  const double o3 = gauss_kronrod<double, 61>::integrate(f2, 0.0, kInf, 15, 1e-12);
  const auto r2 = hsing_theta({{1, 1.0}, {2, 2.0}}, 1e-8);
  CHECK(r2.theta == doctest::Approx(o3).epsilon(1e-6));
  CHECK(hsing_sigma({{1, 1.0}, {2, 2.0}})(0, 1) == doctest::Approx(rho));
  // Infinite deltas drop out of K.
  CHECK(hsing_theta({{1, 1.0}, {2, kInf}}, 1e-8).theta == doctest::Approx(o1).epsilon(1e-6));
}

TEST_CASE("hsing theta edge cases") {
  CHECK(hsing_theta({}).theta == 1.0);
  CHECK(hsing_theta({{1, kInf}}).theta == 1.0);
  CHECK_THROWS_AS(hsing_theta({{1, 1.0}, {3, 1.0}}), Error);
  try {
    hsing_theta({{1, 1.0}, {3, 1.0}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingDelta);
  }
  // delta_2 far larger than delta_1 gives a correlation above one.
  try {
    hsing_theta({{1, 0.1}, {2, 5.0}});
    FAIL("expected InvalidDeltaMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDeltaMatrix);
  }
  // Singular but PSD: delta_2 = 4 delta_1 makes Sigma_12 = 1.
  const auto r = hsing_theta({{1, 1.0}, {2, 4.0}}, 1e-6);
  CHECK(std::isfinite(r.theta));
  CHECK(r.theta > 0.0);
  CHECK(r.theta <= 1.0 + 1e-6);
}

TEST_CASE("gaussian norming approaches gumbel") {
  auto gap = [](double n) {
    const Norming nm = gaussian_norming(n);
    double worst = 0.0;
    for (double x : {-1.0, 0.0, 1.0, 2.0}) {
      const double exact = std::exp(n * std::log(norm_cdf(nm.a * x + nm.b)));
      worst = std::max(worst, std::abs(exact - gev_cdf(x, GevSpec::gumbel())));
    }
    return worst;
  };
  const double g3 = gap(1e3), g6 = gap(1e6), g12 = gap(1e12);
  CHECK(g6 < g3);
  CHECK(g12 < g6);
  CHECK(g12 < 0.02);
  CHECK_THROWS_AS(gaussian_norming(2.0), Error);
}
