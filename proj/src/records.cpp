#include "recordlab/records.hpp"

#include "combo.hpp"

#include "recordlab/error.hpp"
#include "recordlab/normal.hpp"
#include "recordlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace recordlab {

namespace {

Matrix row(std::initializer_list<double> v) {
  Matrix m(1, v.size());
  int i = 0;
  for (double x : v) m(0, i++) = x;
  return m;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

void check_pair(int j, int n) {
  require(j >= 1 && j < n, ErrorKind::InvalidArgument, "requires 1 <= j < n");
}

// X_c below X_{cond[0]} for every c.
Bound all_below(int) { return Bound::below(0); }

// Event {X_i < X_j for i < j, X_i < X_n for j < i < n} with I = (j, n), 0-based.
GammaConstruction pair_event(const CorrelationModel& model, int j, int n) {
  return GammaConstruction(model.matrix(n), {j - 1, n - 1},
                           [j](int i) { return i < j - 1 ? Bound::below(0) : Bound::below(1); });
}

int auto_max_index(const TailPolicy& p, const NumericOptions& opt, int cap) {
  int m = p.max_index > 0 ? p.max_index : std::min(opt.max_dim + 1, cap);
  return m;
}

bool tail_small(const std::vector<double>& terms, const TailPolicy& p) {
  const int k = static_cast<int>(terms.size());
  if (k < p.run) return false;
  for (int i = k - p.run; i < k; ++i)
    if (std::abs(terms[i]) >= p.eps_tail) return false;
  const double last = std::abs(terms[k - 1]);
  const double prev = std::abs(terms[k - 2 >= 0 ? k - 2 : 0]);
  if (last == 0.0) return true;
  const double r = prev > 0.0 ? last / prev : 1.0;
  if (r >= 1.0) return false;
  return last * r / (1.0 - r) < 10.0 * p.eps_tail;
}

void finish_series(SeriesResult& s, const TailPolicy& p, const char* what) {
  if (s.status != SeriesStatus::Converged && s.residual_bound < p.eps_tail)
    s.status = SeriesStatus::Converged;
  if (p.require_convergence && s.status != SeriesStatus::Converged) {
    std::ostringstream os;
    os << what << " did not converge by index " << s.last_index << " (residual bound "
       << s.residual_bound << ")";
    raise(ErrorKind::TailNotConverged, os.str());
  }
}

}  // namespace

const char* to_string(SeriesStatus s) { return s == SeriesStatus::Converged ? "converged" : "truncated"; }

const char* to_string(SeriesClass c) {
  switch (c) {
    case SeriesClass::Divergent:
      return "divergent";
    case SeriesClass::Convergent:
      return "convergent";
    default:
      return "inconclusive";
  }
}

GammaConstruction gamma_single(const CorrelationModel& model, int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "record index must be >= 2");
  const Matrix corr = model.matrix(n);
  GammaConstruction g(corr, {n - 1}, all_below);
  const Matrix gb = g.gamma_bar();
  for (int i = 0; i < n - 1; ++i) {
    for (int k = i + 1; k < n - 1; ++k) {
      if (std::abs(gb(i, k)) > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "gamma_{" << i + 1 << "," << k + 1 << ";" << n << "} = " << gb(i, k)
           << " violates |gamma| <= 1, i.e. 1 + rho_ij - rho_in - rho_jn >= -2 sqrt((1 - rho_in)(1 - rho_jn))";
        raise(ErrorKind::InvalidGamma, os.str());
      }
    }
  }
  if (!is_positive_definite(gb)) raise(ErrorKind::InvalidGamma, "Gamma is not positive definite");
  return g;
}

RecordLaw record_probability(const CorrelationModel& model, int n, const NumericOptions& opt) {
  require(n >= 1, ErrorKind::InvalidArgument, "record index must be >= 1");
  if (n == 1) return law(Combo{1.0, 0.0, true, 0}, opt);
  const auto g = gamma_single(model, n);
  Combo c;
  c.add(1.0, g.probability(mvn_options(opt, opt.seed)));
  return law(c, opt);
}

RecordLaw record_value_cdf(const CorrelationModel& model, int n, double x, const NumericOptions& opt) {
  require(n >= 1, ErrorKind::InvalidArgument, "record index must be >= 1");
  require(!std::isnan(x), ErrorKind::InvalidArgument, "x is NaN");
  if (n == 1) return law(Combo{x == kInf ? 1.0 : norm_cdf(x), 0.0, true, 1}, opt);
  const auto g = gamma_single(model, n);
  const Estimate e = csn_cdf(Vector::Constant(1, x), g.latent(), mvn_options(opt, opt.seed));
  return law(Combo{e.value, e.abs_error, e.converged, g.dim(1)}, opt);
}

RecordLaw arrival_times_joint(const CorrelationModel& model, const std::vector<int>& times,
                              const NumericOptions& opt) {
  require(!times.empty(), ErrorKind::InvalidTimes, "no arrival times given");
  require(times.front() >= 2, ErrorKind::InvalidTimes, "the second record time must be >= 2");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], ErrorKind::InvalidTimes, "arrival times must be strictly increasing");
  const int k = static_cast<int>(times.size()) + 1;
  Index cond{0};
  for (int t : times) cond.push_back(t - 1);
  const GammaConstruction g(model.matrix(times.back()), cond, [&](int i) {
    int l = 0;
    while (l + 1 < k && cond[l + 1] < i) ++l;
    return Bound::below(l);
  });
  Matrix d = Matrix::Zero(k - 1, k);
  for (int l = 0; l + 1 < k; ++l) {
    d(l, l) = 1.0;
    d(l, l + 1) = -1.0;
  }
  Combo c;
  c.add(1.0, g.mass(d, Vector::Zero(k - 1), mvn_options(opt, opt.seed)));
  return law(c, opt);
}

RecordLaw max_at(const CorrelationModel& model, int j, int m, const NumericOptions& opt) {
  require(j >= 1 && j <= m, ErrorKind::InvalidArgument, "requires 1 <= j <= m");
  if (m == 1) return law(Combo{1.0, 0.0, true, 0}, opt);
  const GammaConstruction g(model.matrix(m), {j - 1}, all_below);
  Combo c;
  c.add(1.0, g.probability(mvn_options(opt, opt.seed)));
  return law(c, opt);
}

RecordLaw second_record_time_pmf(const CorrelationModel& model, int n, const NumericOptions& opt) {
  require(n >= 2, ErrorKind::InvalidArgument, "second record time is >= 2");
  if (n == 2) return law(Combo{0.5, 0.0, true, 0}, opt);
  // P(T(2) > m) = P(X_1 = max(X_1..X_m)).
  const auto a = max_at(model, 1, n - 1, opt);
  const auto b = max_at(model, 1, n, opt);
  Combo c{a.value - b.value, a.abs_error + b.abs_error, a.converged && b.converged, b.dim};
  return law(c, opt);
}

SeriesResult first_increment_cdf(const CorrelationModel& model, double x, const TailPolicy& policy,
                                 const NumericOptions& opt) {
  require(x > 0.0, ErrorKind::InvalidArgument, "increment cdf needs x > 0");
  SeriesResult s;
  const int last = std::min(auto_max_index(policy, opt, 1 << 20), model.horizon());
  const Matrix a = row({-1.0, 1.0});
  for (int n = 2; n <= last; ++n) {
    // T(2) = n and X_n - X_1 <= x, as a difference of two event masses.
    const GammaConstruction g(model.matrix(n), {0, n - 1}, all_below);
    const auto mo = mvn_options(opt, derive_seed(opt.seed, n));
    Combo c;
    c.add(1.0, g.mass(a, vec({x}), mo)).add(-1.0, g.mass(a, vec({0.0}), mo));
    s.terms.push_back(std::max(0.0, c.value));
    s.value += s.terms.back();
    s.abs_error += c.abs_error;
    s.converged = s.converged && c.converged;
    s.dim = std::max(s.dim, c.dim);
    s.last_index = n;
    if (tail_small(s.terms, policy)) {
      s.status = SeriesStatus::Converged;
      break;
    }
  }
  const auto tail = max_at(model, 1, s.last_index, opt);
  s.residual_bound = tail.value + tail.abs_error;
  s.value = std::min(s.value, 1.0);
  finish_series(s, policy, "first increment series");
  return s;
}

SeriesResult second_increment_cdf(const CorrelationModel& model, double x, const TailPolicy& policy,
                                  const NumericOptions& opt) {
  require(x > 0.0, ErrorKind::InvalidArgument, "increment cdf needs x > 0");
  SeriesResult s;
  // The double series needs O(N^2) integrals of dimension up to N - 1.
  const int last = std::min(auto_max_index(policy, opt, 12), model.horizon());
  const Matrix d = (Matrix(2, 3) << 1.0, -1.0, 0.0, 0.0, -1.0, 1.0).finished();
  for (int k = 3; k <= last; ++k) {
    const Matrix corr = model.matrix(k);
    Combo band;
    for (int j = 2; j < k; ++j) {
      const GammaConstruction g(corr, {0, j - 1, k - 1},
                                [j](int i) { return i < j - 1 ? Bound::below(0) : Bound::below(1); });
      const auto mo = mvn_options(opt, derive_seed(opt.seed, static_cast<std::uint64_t>(k) * 4096 + j));
      band.add(1.0, g.mass(d, vec({0.0, x}), mo)).add(-1.0, g.mass(d, vec({0.0, 0.0}), mo));
    }
    s.terms.push_back(std::max(0.0, band.value));
    s.value += s.terms.back();
    s.abs_error += band.abs_error;
    s.converged = s.converged && band.converged;
    s.dim = std::max(s.dim, band.dim);
    s.last_index = k;
    if (tail_small(s.terms, policy)) {
      s.status = SeriesStatus::Converged;
      break;
    }
  }
  // P(T(3) > N) = P(T(2) > N) + sum_j P(T(2) = j, no record in j+1..N).
  const int n = s.last_index;
  const auto first = max_at(model, 1, n, opt);
  double residual = first.value + first.abs_error;
  const Matrix corr = model.matrix(n);
  for (int j = 2; j <= n; ++j) {
    const GammaConstruction g(corr, {0, j - 1},
                              [j](int i) { return i < j - 1 ? Bound::below(0) : Bound::below(1); });
    const auto r = g.mass(row({1.0, -1.0}), vec({0.0}), mvn_options(opt, derive_seed(opt.seed, 7000 + j)));
    residual += r.value + r.abs_error;
  }
  s.residual_bound = std::min(residual, 1.0);
  s.value = std::min(s.value, 1.0);
  finish_series(s, policy, "second increment series");
  return s;
}

ExpectedRecords expected_records(const CorrelationModel& model, const TailPolicy& policy,
                                 const NumericOptions& opt) {
  ExpectedRecords e;
  const int last = std::min(auto_max_index(policy, opt, 1 << 20), model.horizon());
  require(last >= 7, ErrorKind::InvalidArgument, "expected_records needs a horizon of at least 7");
  e.partial_sum = 1.0;
  const int run = std::max(policy.run, 2);
  for (int n = 2; n <= last; ++n) {
    NumericOptions o = opt;
    o.seed = derive_seed(opt.seed, n);
    const auto p = record_probability(model, n, o);
    e.terms.push_back(p.value);
    e.partial_sum += p.value;
    e.abs_error += p.abs_error;
    e.converged = e.converged && p.converged;
    e.last_index = n;
    if (tail_small(e.terms, policy)) break;
  }

  // Harmonic comparison: n P(R_n) bounded below versus geometric decay.
  const int k = static_cast<int>(e.terms.size());
  std::vector<double> scaled(k), ratios;
  for (int i = 0; i < k; ++i) scaled[i] = (i + 2) * e.terms[i];
  for (int i = 1; i < k; ++i) ratios.push_back(e.terms[i - 1] > 0 ? e.terms[i] / e.terms[i - 1] : 0.0);
  const double max_scaled = *std::max_element(scaled.begin(), scaled.end());
  const double min_recent = *std::min_element(scaled.end() - std::min(run, k), scaled.end());
  const int nr = static_cast<int>(ratios.size());
  bool geometric = nr >= run;
  for (int i = std::max(0, nr - run); i < nr; ++i) geometric = geometric && ratios[i] <= 0.9;

  e.value = e.partial_sum;
  if (geometric) {
    e.classification = SeriesClass::Convergent;
    const double r = ratios.back();
    e.value += e.terms.back() * r / (1.0 - r);
  } else if (min_recent >= 0.5 * max_scaled && ratios.back() > 0.9) {
    e.classification = SeriesClass::Divergent;
  }
  return e;
}

RecordLaw consecutive_joint_record_prob(const CorrelationModel& model, int j, int n,
                                        const NumericOptions& opt) {
  check_pair(j, n);
  const auto a = max_at(model, j, n - 1, opt);
  const auto b = max_at(model, j, n, opt);
  return law(Combo{a.value - b.value, a.abs_error + b.abs_error, a.converged && b.converged, b.dim}, opt);
}

RecordLaw consecutive_joint_record_cdf(const CorrelationModel& model, int j, int n, double x1, double x2,
                                       const NumericOptions& opt) {
  check_pair(j, n);
  const double a = std::min(x1, x2);
  const auto mo = mvn_options(opt, opt.seed);
  const Matrix corr = model.matrix(n);
  // P(X_j max of 1..n-1, X_j <= a, X_n <= x2) - P(X_j max of 1..n, X_j <= a).
  const GammaConstruction with_free(corr, {j - 1},
                                    [&](int i) { return i == n - 1 ? Bound::free(x2) : Bound::below(0); });
  const GammaConstruction all(corr, {j - 1}, all_below);
  Combo num;
  num.add(1.0, with_free.mass(Matrix::Ones(1, 1), vec({a}), mo))
      .add(-1.0, all.mass(Matrix::Ones(1, 1), vec({a}), mo));
  const auto p = consecutive_joint_record_prob(model, j, n, opt);
  return ratio(num, Combo{p.value, p.abs_error, p.converged, p.dim}, opt);
}

RecordLaw joint_record_prob(const CorrelationModel& model, int j, int n, const NumericOptions& opt) {
  check_pair(j, n);
  const auto g = pair_event(model, j, n);
  Combo c;
  c.add(1.0, g.mass(row({1.0, -1.0}), vec({0.0}), mvn_options(opt, opt.seed)));
  return law(c, opt);
}

RecordLaw joint_record_cdf(const CorrelationModel& model, int j, int n, double x1, double x2,
                           const NumericOptions& opt) {
  check_pair(j, n);
  const double a = std::min(x1, x2);
  const double b = x2;
  const auto g = pair_event(model, j, n);
  const auto mo = mvn_options(opt, opt.seed);
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix d = (Matrix(2, 2) << 1.0, -1.0, 0.0, 1.0).finished();
  Combo num;
  num.add(1.0, g.mass(id, vec({a, b}), mo))
      .add(-1.0, g.mass(id, vec({a, a}), mo))
      .add(1.0, g.mass(d, vec({0.0, a}), mo));
  Combo den;
  den.add(1.0, g.mass(row({1.0, -1.0}), vec({0.0}), mo));
  return ratio(num, den, opt);
}

RecordLaw joint_record_marginal(const CorrelationModel& model, int j, int n, double x, Marginal which,
                                const NumericOptions& opt) {
  check_pair(j, n);
  if (which == Marginal::AtJ) return joint_record_cdf(model, j, n, x, kInf, opt);
  const auto g = pair_event(model, j, n);
  const auto mo = mvn_options(opt, opt.seed);
  const Matrix d = (Matrix(2, 2) << 1.0, -1.0, 0.0, 1.0).finished();
  Combo num, den;
  num.add(1.0, g.mass(d, vec({0.0, x}), mo));
  den.add(1.0, g.mass(row({1.0, -1.0}), vec({0.0}), mo));
  return ratio(num, den, opt);
}

}  // namespace recordlab
