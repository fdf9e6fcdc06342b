#include "recordlab/validate.hpp"

#include "recordlab/asymptotic.hpp"
#include "recordlab/csn.hpp"
#include "recordlab/error.hpp"
#include "recordlab/multivariate.hpp"
#include "recordlab/normal.hpp"
#include "recordlab/records.hpp"
#include "recordlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace recordlab {

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::vector<std::string> validation_suites() { return {"iid", "gaussian", "csn", "asymptotic", "multivariate", "all"}; }

namespace {

void add(ValidationReport& r, std::string name, double expected, double observed, double bound) {
  r.checks.push_back({std::move(name), expected, observed, bound, std::abs(expected - observed) <= bound});
}

// Closed form against a simulated proportion: 3 (SE + integration error).
void add_mc(ValidationReport& r, const std::string& name, const RecordLaw& closed, double rate, std::size_t paths) {
  add(r, name, closed.value, rate, 3.0 * (binomial_se(closed.value, paths) + closed.abs_error));
}

std::string at(const std::string& base, int n) { return base + "(" + std::to_string(n) + ")"; }

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void iid_suite(ValidationReport& r, const ValidationOptions& o) {
  const auto iid = CorrelationModel::iid();
  for (int n = 2; n <= o.n_max; ++n) {
    add(r, at("record_prob", n), 1.0 / n, record_probability(iid, n, o.numeric).value, 5e-4);
    add(r, at("t2_pmf", n), 1.0 / (n * (n - 1.0)), second_record_time_pmf(iid, n, o.numeric).value, 5e-4);
    for (double x : {-1.0, 0.0, 1.0, 2.0})
      add(r, at("record_cdf", n) + "@" + label(x), std::pow(norm_cdf(x), n),
          record_value_cdf(iid, n, x, o.numeric).value, 1e-3);
  }
  SimStudy s;
  s.n = o.n_max;
  s.n_paths = o.paths;
  s.seed = o.numeric.seed;
  const auto st = simulate_records(s);
  for (int n = 2; n <= o.n_max; ++n)
    add(r, at("mc_rate", n), 1.0 / n, st.rate(n), 3.0 * binomial_se(1.0 / n, o.paths));
}

void gaussian_suite(ValidationReport& r, const ValidationOptions& o) {
  require(o.n_max >= 5, ErrorKind::InvalidArgument, "gaussian suite needs n_max >= 5");
  const auto& m = o.model;
  SimStudy s;
  s.process = m;
  s.n = o.n_max;
  s.n_paths = o.paths;
  s.seed = o.numeric.seed;
  const auto st = simulate_records(s);
  const auto& num = o.numeric;
  for (int n = 2; n <= o.n_max; ++n) add_mc(r, at("record_prob", n), record_probability(m, n, num), st.rate(n), o.paths);
  add_mc(r, "arrival(2,4)", arrival_times_joint(m, {2, 4}, num), st.t2t3_rate(2, 4), o.paths);
  add_mc(r, "joint(2,4)", joint_record_prob(m, 2, 4, num), st.pair_rate(2, 4), o.paths);
  add_mc(r, "joint(3,5)", joint_record_prob(m, 3, 5, num), st.pair_rate(3, 5), o.paths);
  add_mc(r, "consecutive(2,4)", consecutive_joint_record_prob(m, 2, 4, num), st.consecutive_rate(2, 4), o.paths);
  TailPolicy p;
  p.max_index = o.n_max;
  for (double x : {0.5, 1.0, 2.0}) {
    auto frac = [&](const std::vector<double>& v) {
      return double(std::count_if(v.begin(), v.end(), [x](double d) { return d <= x; })) / o.paths;
    };
    const auto f = first_increment_cdf(m, x, p, num);
    add_mc(r, "increment1@" + label(x), RecordLaw{f.value, f.abs_error}, frac(st.increment1), o.paths);
    const auto g = second_increment_cdf(m, x, p, num);
    add_mc(r, "increment2@" + label(x), RecordLaw{g.value, g.abs_error}, frac(st.increment2), o.paths);
  }
}

void csn_suite(ValidationReport& r, const ValidationOptions& o) {
  const auto sn = CsnParams::standard(Matrix::Ones(1, 1), Matrix::Ones(1, 1));
  add(r, "skew_normal_cdf(0)", 0.25, csn_cdf(Vector::Zero(1), sn).value, 1e-6);
  Vector mu(1);
  mu << 0.4;
  const auto p = CsnParams::make(Vector::Zero(1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), mu, Matrix::Ones(1, 1));
  const auto smp = csn_sample(20000, p, o.numeric.seed);
  const double acc = csn_normalizer(p).value;
  const double empirical = double(smp.draws.rows()) / double(smp.attempts);
  add(r, "acceptance", acc, empirical, 3.0 * std::sqrt(acc * (1 - acc) / smp.attempts));
}

void asymptotic_suite(ValidationReport& r, const ValidationOptions& o) {
  const auto ch = simulate_chernick(2, 1000, std::max<std::size_t>(o.paths / 4, 1000), o.numeric.seed);
  add(r, "chernick n*P(R_n)", 2.0, 1000 * ch.rb_rate(1000), 0.3);
  const double theta = stable_ma_theta({1.0, 0.5}, 1.5, 0.0).theta;
  const auto sm = simulate_stable_ma({1.0, 0.5}, 1.5, 0.0, 500, std::max<std::size_t>(o.paths / 10, 1000),
                                     o.numeric.seed);
  std::vector<double> mx = sm.maxima;
  const double scale = std::pow(500.0, 1.0 / 1.5);
  for (auto& v : mx) v /= scale;
  std::sort(mx.begin(), mx.end());
  double sup = 0.0;
  for (double x = 0.5; x <= 5.0; x += 0.05) {
    const double e = double(std::upper_bound(mx.begin(), mx.end(), x) - mx.begin()) / mx.size();
    sup = std::max(sup, std::abs(e - gev_cdf(x, GevSpec::frechet(1.5), theta)));
  }
  add(r, "stable_ma sup distance", 0.0, sup, 0.08);
}

void multivariate_suite(ValidationReport& r, const ValidationOptions& o) {
  const auto ind = CrossCorrelationModel::independent({CorrelationModel::iid(), CorrelationModel::iid()});
  for (int n = 2; n <= std::min(o.n_max, 5); ++n)
    add(r, at("complete_prob_iid", n), 1.0 / (n * n), complete_record_prob(ind, n, o.numeric).value, 5e-4);
  Matrix cross(2, 2);
  cross << 1.0, 0.3, 0.3, 1.0;
  const auto m = CrossCorrelationModel::separable(CorrelationModel::ar1(0.4), cross);
  SimStudy s;
  s.process = m;
  s.n = 4;
  s.n_paths = o.paths;
  s.seed = o.numeric.seed;
  const auto st = simulate_records(s);
  for (int n = 2; n <= 4; ++n) add_mc(r, at("complete_prob", n), complete_record_prob(m, n, o.numeric), st.rate(n), o.paths);
  add_mc(r, "joint_complete(2,4)", joint_complete_record_prob(m, 2, 4, o.numeric), st.pair_rate(2, 4), o.paths);
}

}  // namespace

ValidationReport run_validation(const std::string& suite, const ValidationOptions& opt) {
  ValidationReport r;
  r.suite = suite;
  const bool all = suite == "all";
  bool known = all;
  auto want = [&](const char* name) {
    if (all || suite == name) {
      known = true;
      return true;
    }
    return false;
  };
  if (want("iid")) iid_suite(r, opt);
  if (want("gaussian")) gaussian_suite(r, opt);
  if (want("csn")) csn_suite(r, opt);
  if (want("asymptotic")) asymptotic_suite(r, opt);
  if (want("multivariate")) multivariate_suite(r, opt);
  require(known, ErrorKind::InvalidArgument, "unknown validation suite '" + suite + "'");
  return r;
}

}  // namespace recordlab
