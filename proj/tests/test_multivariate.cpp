#include <doctest.h>

#include "oracles.hpp"
#include "recordlab/error.hpp"
#include "recordlab/multivariate.hpp"
#include "recordlab/mvn.hpp"
#include "recordlab/records.hpp"

#include <cmath>

using namespace recordlab;

namespace {

NumericOptions opts(double tol = 1e-5) {
  NumericOptions o;
  o.tol = tol;
  o.seed = 11;
  return o;
}

Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

CrossCorrelationModel iid2() {
  return CrossCorrelationModel::independent({CorrelationModel::iid(), CorrelationModel::iid()});
}

CrossCorrelationModel ar_cross() {
  Matrix cross(2, 2);
  cross << 1.0, 0.3, 0.3, 1.0;
  return CrossCorrelationModel::separable(CorrelationModel::ar1(0.4), cross);
}

// Record constraints of a complete record at n (and at j when j > 0), as rows
// on the stacked vector.
Matrix complete_rows(int d, int n, int j = 0) {
  std::vector<Eigen::RowVectorXd> rows;
  for (int c = 0; c < d; ++c) {
    for (int t = 1; t < n; ++t) {
      if (t == j) continue;
      const int target = (j > 0 && t < j) ? j : n;
      rows.push_back(oracle::diff_row(d * n, stacked_index(c, t, n), stacked_index(c, target, n)));
    }
    if (j > 0) rows.push_back(oracle::diff_row(d * n, stacked_index(c, j, n), stacked_index(c, n, n)));
  }
  Matrix l(rows.size(), d * n);
  for (std::size_t r = 0; r < rows.size(); ++r) l.row(r) = rows[r];
  return l;
}

}  // namespace

TEST_CASE("cross model: stacked covariance layout") {
  const auto m = ar_cross();
  const Matrix s = m.matrix(3);
  CHECK(s.rows() == 6);
  // Cov(X_{c,s}, X_{e,t}) = 0.4^{|t-s|} * cross(c, e).
  CHECK(s(stacked_index(0, 1, 3), stacked_index(1, 3, 3)) == doctest::Approx(0.16 * 0.3));
  CHECK(s(stacked_index(1, 2, 3), stacked_index(1, 3, 3)) == doctest::Approx(0.4));
  CHECK(s(stacked_index(0, 2, 3), stacked_index(1, 2, 3)) == doctest::Approx(0.3));
  // Tabulated blocks are not symmetric at positive lags.
  Matrix b0 = Matrix::Identity(2, 2), b1(2, 2);
  b1 << 0.2, 0.1, -0.05, 0.3;
  const auto t = CrossCorrelationModel::tabulated({b0, b1});
  const Matrix st = t.matrix(2);
  CHECK(st(stacked_index(0, 1, 2), stacked_index(1, 2, 2)) == doctest::Approx(0.1));
  CHECK(st(stacked_index(1, 1, 2), stacked_index(0, 2, 2)) == doctest::Approx(-0.05));
  CHECK(st(stacked_index(1, 2, 2), stacked_index(0, 1, 2)) == doctest::Approx(0.1));
  Matrix bad(2, 2);
  bad << 0.95, 0.9, 0.9, 0.95;
  CHECK_THROWS_AS(CrossCorrelationModel::tabulated({b0, bad}).matrix(4), Error);
}

TEST_CASE("complete records: independent components") {
  const auto m = iid2();
  CHECK(complete_record_prob(m, 3, opts()).value == doctest::Approx(1.0 / 9.0).epsilon(1e-5));
  CHECK(complete_record_prob(m, 5, opts()).value == doctest::Approx(1.0 / 25.0).epsilon(1e-4));
  // Per component P(X_1 < X_2 <= 0) / (1/2) = 1/4.
  CHECK(complete_record_cdf(m, 2, v2(0, 0), opts()).value == doctest::Approx(1.0 / 16.0).epsilon(1e-5));
  CHECK(joint_complete_record_prob(m, 2, 3, opts()).value == doctest::Approx(1.0 / 36.0).epsilon(1e-5));
  CHECK(complete_record_cdf(m, 3, v2(kInf, kInf), opts()).value == doctest::Approx(1.0));
}

TEST_CASE("complete records: d = 1 reduces to the univariate laws") {
  for (const auto& u : {CorrelationModel::iid(), CorrelationModel::ar1(0.5), CorrelationModel::equicorrelated(0.3)}) {
    const auto m = CrossCorrelationModel::univariate(u);
    const auto o = opts();
    for (int n : {2, 4, 6}) {
      const auto a = complete_record_prob(m, n, o);
      const auto b = record_probability(u, n, o);
      CHECK(std::abs(a.value - b.value) <= 2e-5);
      Vector x(1);
      x << 0.4;
      CHECK(std::abs(complete_record_cdf(m, n, x, o).value - record_value_cdf(u, n, 0.4, o).value) <= 2e-5);
    }
    const auto jp = joint_complete_record_prob(m, 2, 5, o);
    CHECK(std::abs(jp.value - joint_record_prob(u, 2, 5, o).value) <= 2e-5);
    Vector x1(1), x2(1);
    for (auto [a, b] : {std::pair{0.2, 1.1}, std::pair{1.5, 0.3}, std::pair{-0.4, kInf}}) {
      x1 << a;
      x2 << b;
      const double mv = joint_complete_record_cdf(m, 2, 5, x1, x2, o).value;
      CHECK(std::abs(mv - joint_record_cdf(u, 2, 5, a, b, o).value) <= 2e-5);
    }
  }
}

TEST_CASE("complete records: correlated components against direct linear events") {
  const auto m = ar_cross();
  for (int n : {2, 3, 4}) {
    const Matrix s = m.matrix(n);
    const Matrix l = complete_rows(2, n);
    const auto o = oracle::linear_event(s, l, Vector::Constant(l.rows(), -kInf), Vector::Zero(l.rows()));
    const auto r = complete_record_prob(m, n, opts());
    CHECK(std::abs(r.value - o.value) <= r.abs_error + o.abs_error + 1e-5);
  }
  {
    const int n = 4, j = 2;
    const Matrix l = complete_rows(2, n, j);
    const auto o =
        oracle::linear_event(m.matrix(n), l, Vector::Constant(l.rows(), -kInf), Vector::Zero(l.rows()));
    const auto r = joint_complete_record_prob(m, j, n, opts());
    CHECK(std::abs(r.value - o.value) <= r.abs_error + o.abs_error + 1e-5);
  }
  // Record value cdf: add X_{c,n} <= x_c rows to the linear event.
  {
    const int n = 3;
    const Matrix l0 = complete_rows(2, n);
    Matrix l(l0.rows() + 2, l0.cols());
    l << l0, Matrix::Zero(2, l0.cols());
    l(l0.rows(), stacked_index(0, n, n)) = 1.0;
    l(l0.rows() + 1, stacked_index(1, n, n)) = 1.0;
    Vector up = Vector::Zero(l.rows());
    up(l0.rows()) = 0.5;
    up(l0.rows() + 1) = 1.2;
    const auto num = oracle::linear_event(m.matrix(n), l, Vector::Constant(l.rows(), -kInf), up);
    const auto den = complete_record_prob(m, n, opts());
    const auto r = complete_record_cdf(m, n, v2(0.5, 1.2), opts());
    CHECK(r.value == doctest::Approx(num.value / den.value).epsilon(1e-4));
  }
}

TEST_CASE("joint complete cdf: factorization and Monte Carlo") {
  const auto m = iid2();
  const auto u = CorrelationModel::iid();
  for (auto [a, b, c, e] : {std::array{0.0, 0.5, 1.0, 0.2}, std::array{-0.3, 2.0, 0.4, kInf}}) {
    const double joint = joint_complete_record_cdf(m, 2, 4, v2(a, c), v2(b, e), opts()).value;
    const double f = joint_record_cdf(u, 2, 4, a, b, opts()).value * joint_record_cdf(u, 2, 4, c, e, opts()).value;
    CHECK(std::abs(joint - f) < 1e-3);
  }
  CHECK(joint_complete_record_cdf(m, 2, 4, v2(kInf, kInf), v2(kInf, kInf), opts()).value ==
        doctest::Approx(1.0).epsilon(1e-9));

  const auto cm = ar_cross();
  const int j = 2, n = 4;
  const Vector x1 = v2(0.6, 0.9), x2 = v2(1.3, 0.7);
  const Matrix paths = mvn_sample(200000, Vector::Zero(2 * n), cm.matrix(n), 5);
  long hit = 0, cond = 0;
  for (Eigen::Index p = 0; p < paths.rows(); ++p) {
    bool ok = true, in = true;
    for (int c = 0; c < 2 && ok; ++c) {
      auto x = [&](int t) { return paths(p, stacked_index(c, t, n)); };
      for (int t = 1; t < n; ++t)
        if (t != j && x(t) >= x(t < j ? j : n)) ok = false;
      if (x(j) >= x(n)) ok = false;
      in = in && x(j) <= x1(c) && x(n) <= x2(c);
    }
    if (ok) {
      ++cond;
      if (in) ++hit;
    }
  }
  const double ph = double(hit) / cond;
  const double se = std::sqrt(ph * (1 - ph) / cond);
  const auto r = joint_complete_record_cdf(cm, j, n, x1, x2, opts());
  CHECK(std::abs(r.value - ph) < 3 * se + r.abs_error);
  const double pj = double(cond) / paths.rows();
  const auto jp = joint_complete_record_prob(cm, j, n, opts());
  CHECK(std::abs(jp.value - pj) < 3 * std::sqrt(pj * (1 - pj) / paths.rows()));
}

TEST_CASE("complete records: properties and errors") {
  const auto m = ar_cross();
  double prev = 1.0;
  for (int n = 2; n <= 6; ++n) {
    const auto r = complete_record_prob(m, n, opts(1e-5));
    CHECK(r.value <= prev + r.abs_error);
    prev = r.value;
  }
  std::vector<CorrelationModel> five(5, CorrelationModel::iid());
  const auto m5 = CrossCorrelationModel::independent(five);
  try {
    joint_complete_record_cdf(m5, 1, 2, Vector::Zero(5), Vector::Zero(5));
    FAIL("expected SubsetExplosion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SubsetExplosion);
  }
  NumericOptions small = opts();
  small.max_dim = 6;
  try {
    complete_record_prob(iid2(), 5, small);
    FAIL("expected DimensionCap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionCap);
  }
  CHECK_THROWS_AS(complete_record_cdf(iid2(), 3, Vector::Zero(3)), Error);
  CHECK_THROWS_AS(joint_complete_record_prob(iid2(), 3, 3), Error);
}
