#include "recordlab/simulate.hpp"

#include "recordlab/error.hpp"
#include "recordlab/linalg.hpp"
#include "recordlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace recordlab {

namespace {

constexpr int kCholeskyLimit = 500;
constexpr std::uint64_t kBootstrapStream = 0x626f6f74;

void check_margin(const std::function<double(double)>& f) {
  if (!f) return;
  double prev = f(-10.0);
  for (int i = 1; i <= 400; ++i) {
    const double x = -10.0 + 0.05 * i;
    const double y = f(x);
    require(y > prev, ErrorKind::InvalidArgument, "margin transform is not strictly increasing");
    prev = y;
  }
}

// Produces path `p` of a study as n * d values in component-major order.
class PathGenerator {
 public:
  explicit PathGenerator(const SimStudy& s) : study_(s), n_(s.n) {
    require(s.n >= 1, ErrorKind::InvalidArgument, "path length must be >= 1");
    require(s.n_paths >= 1, ErrorKind::InvalidArgument, "n_paths must be >= 1");
    check_margin(s.margin);
    if (const auto* m = std::get_if<CorrelationModel>(&s.process)) {
      if (m->kind() == CorrelationModel::Kind::Ar1) {
        mode_ = Mode::Ar1;
        phi_ = m->rho(1);
      } else if (m->kind() == CorrelationModel::Kind::Iid) {
        mode_ = Mode::Iid;
      } else {
        set_cholesky(m->matrix(n_));
      }
    } else if (const auto* c = std::get_if<CrossCorrelationModel>(&s.process)) {
      d_ = c->dim();
      set_cholesky(c->matrix(n_));
    } else if (const auto* ch = std::get_if<ChernickProcess>(&s.process)) {
      require(ch->m >= 2, ErrorKind::InvalidArgument, "Chernick m must be >= 2");
      mode_ = Mode::Chernick;
    } else {
      const auto& st = std::get<StableMaProcess>(s.process);
      require(!st.coeffs.empty(), ErrorKind::InvalidArgument, "moving average needs coefficients");
      require(st.alpha > 0 && st.alpha <= 2, ErrorKind::InvalidArgument, "alpha must lie in (0, 2]");
      require(std::abs(st.kappa) <= 1, ErrorKind::InvalidArgument, "kappa must lie in [-1, 1]");
      mode_ = Mode::StableMa;
    }
  }

  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] bool chernick() const { return mode_ == Mode::Chernick; }

  // rb, when given, receives P(R_t | past) for the Chernick recursion.
  void generate(std::size_t p, std::vector<double>& x, std::vector<double>* rb) const {
    Rng rng(study_.seed, p);
    x.assign(static_cast<std::size_t>(n_) * d_, 0.0);
    switch (mode_) {
      case Mode::Iid:
        for (auto& v : x) v = rng.normal();
        break;
      case Mode::Ar1: {
        const double s = std::sqrt(1.0 - phi_ * phi_);
        x[0] = rng.normal();
        for (int t = 1; t < n_; ++t) x[t] = phi_ * x[t - 1] + s * rng.normal();
        break;
      }
      case Mode::Cholesky: {
        const int dim = static_cast<int>(chol_.rows());
        std::vector<double> z(dim);
        for (auto& v : z) v = rng.normal();
        for (int i = 0; i < dim; ++i) {
          double acc = 0.0;
          for (int k = 0; k <= i; ++k) acc += chol_(i, k) * z[k];
          x[i] = acc;
        }
        break;
      }
      case Mode::Chernick: {
        const int m = std::get<ChernickProcess>(study_.process).m;
        double prev = rng.uniform();
        double run_max = -kInf;
        if (rb) rb->assign(n_, 0.0);
        for (int t = 0; t < n_; ++t) {
          if (rb) {
            int hits = 0;
            for (int k = 0; k < m; ++k)
              if (prev / m + double(k) / m > run_max) ++hits;
            (*rb)[t] = double(hits) / m;
          }
          const int k = std::min(m - 1, static_cast<int>(rng.uniform() * m));
          x[t] = prev / m + double(k) / m;
          prev = x[t];
          run_max = std::max(run_max, x[t]);
        }
        break;
      }
      case Mode::StableMa: {
        const auto& st = std::get<StableMaProcess>(study_.process);
        const int q = static_cast<int>(st.coeffs.size());
        // eps[k] is the innovation at time k - q + 2, so the first q - 1 are burn-in.
        std::vector<double> eps(n_ + q - 1);
        for (auto& e : eps) e = sample_stable(st.alpha, st.kappa, rng);
        for (int t = 0; t < n_; ++t) {
          double acc = 0.0;
          for (int i = 0; i < q; ++i) acc += st.coeffs[i] * eps[t + q - 1 - i];
          x[t] = acc;
        }
        break;
      }
    }
    if (study_.margin)
      for (auto& v : x) v = study_.margin(v);
  }

 private:
  enum class Mode { Iid, Ar1, Cholesky, Chernick, StableMa };

  void set_cholesky(const Matrix& corr) {
    require(corr.rows() <= kCholeskyLimit, ErrorKind::InvalidArgument,
            "Cholesky path generation is limited to dimension 500");
    chol_ = cholesky(corr);
    mode_ = Mode::Cholesky;
  }

  const SimStudy& study_;
  int n_;
  int d_ = 1;
  Mode mode_ = Mode::Iid;
  double phi_ = 0.0;
  Matrix chol_;
};

EmpiricalRecordStats empty_stats(const SimStudy& s, int d, bool chernick) {
  EmpiricalRecordStats st;
  st.n = s.n;
  st.d = d;
  st.record_counts.assign(s.n, 0);
  st.t2_counts.assign(s.n, 0);
  st.t3_counts.assign(s.n, 0);
  if (chernick) st.rb_sum.assign(s.n, 0.0);
  if (s.n <= kPairLimit) {
    const std::size_t nn = static_cast<std::size_t>(s.n) * s.n;
    st.pair_counts.assign(nn, 0);
    st.consecutive_counts.assign(nn, 0);
    st.t2t3_counts.assign(nn, 0);
  }
  return st;
}

void merge(EmpiricalRecordStats& into, const EmpiricalRecordStats& from) {
  auto add = [](auto& a, const auto& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  };
  add(into.record_counts, from.record_counts);
  add(into.rb_sum, from.rb_sum);
  add(into.t2_counts, from.t2_counts);
  add(into.t3_counts, from.t3_counts);
  add(into.pair_counts, from.pair_counts);
  add(into.consecutive_counts, from.consecutive_counts);
  add(into.t2t3_counts, from.t2t3_counts);
  into.records_sum += from.records_sum;
  into.records_sumsq += from.records_sumsq;
  auto cat = [](auto& a, const auto& b) { a.insert(a.end(), b.begin(), b.end()); };
  cat(into.increment1, from.increment1);
  cat(into.increment2, from.increment2);
  cat(into.record_values, from.record_values);
  cat(into.maxima, from.maxima);
  cat(into.indicators, from.indicators);
}

}  // namespace

double binomial_se(double p, std::size_t paths) {
  if (paths < 2) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / double(paths));
}

double EmpiricalRecordStats::rate(int t) const { return double(record_counts.at(t - 1)) / n_paths; }
double EmpiricalRecordStats::rate_se(int t) const { return binomial_se(rate(t), n_paths); }
double EmpiricalRecordStats::rb_rate(int t) const {
  require(!rb_sum.empty(), ErrorKind::InvalidArgument, "no conditional record probabilities recorded");
  return rb_sum.at(t - 1) / n_paths;
}
double EmpiricalRecordStats::t2_rate(int t) const { return double(t2_counts.at(t - 1)) / n_paths; }
double EmpiricalRecordStats::t3_rate(int t) const { return double(t3_counts.at(t - 1)) / n_paths; }

namespace {
std::size_t pair_at(const EmpiricalRecordStats& s, const std::vector<std::uint64_t>& v, int j, int k) {
  require(!v.empty(), ErrorKind::InvalidArgument, "pair counts are only kept for n <= 64");
  require(j >= 1 && j < k && k <= s.n, ErrorKind::InvalidArgument, "requires 1 <= j < k <= n");
  return v[static_cast<std::size_t>(j - 1) * s.n + (k - 1)];
}
}  // namespace

double EmpiricalRecordStats::pair_rate(int j, int k) const {
  return double(pair_at(*this, pair_counts, j, k)) / n_paths;
}
double EmpiricalRecordStats::consecutive_rate(int j, int k) const {
  return double(pair_at(*this, consecutive_counts, j, k)) / n_paths;
}
double EmpiricalRecordStats::t2t3_rate(int j, int k) const {
  return double(pair_at(*this, t2t3_counts, j, k)) / n_paths;
}
double EmpiricalRecordStats::expected_records() const { return records_sum / n_paths; }
double EmpiricalRecordStats::expected_records_se() const {
  if (n_paths < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = expected_records();
  const double var = (records_sumsq - n_paths * m * m) / (n_paths - 1.0);
  return std::sqrt(std::max(0.0, var) / n_paths);
}

EmpiricalRecordStats simulate_records(const SimStudy& study) {
  const PathGenerator gen(study);
  const int n = study.n, d = gen.d();
  const bool pairs = n <= kPairLimit;
  const std::size_t chunks = std::min<std::size_t>(study.n_paths, 256);
  std::vector<EmpiricalRecordStats> parts(chunks, empty_stats(study, d, gen.chernick()));

  parallel_chunks(study.n_paths, chunks, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    EmpiricalRecordStats& acc = parts[chunk];
    std::vector<double> x, rb;
    std::vector<double> run_max(d);
    std::vector<int> recs;
    for (std::size_t p = begin; p < end; ++p) {
      gen.generate(p, x, gen.chernick() ? &rb : nullptr);
      recs.clear();
      std::fill(run_max.begin(), run_max.end(), -kInf);
      for (int t = 0; t < n; ++t) {
        bool rec = true;
        for (int c = 0; c < d; ++c) {
          const double v = x[static_cast<std::size_t>(c) * n + t];
          if (!(v > run_max[c])) rec = false;  // ties are not records
          run_max[c] = std::max(run_max[c], v);
        }
        if (t == 0) rec = true;
        if (rec) {
          recs.push_back(t);
          ++acc.record_counts[t];
          if (study.value_window.first > 0 && d == 1 && t + 1 >= study.value_window.first &&
              t + 1 <= study.value_window.second)
            acc.record_values.emplace_back(t + 1, x[t]);
        }
        if (study.keep_indicators) acc.indicators.push_back(rec ? 1 : 0);
      }
      if (gen.chernick())
        for (int t = 0; t < n; ++t) acc.rb_sum[t] += t == 0 ? 1.0 : rb[t];
      const double cnt = static_cast<double>(recs.size());
      acc.records_sum += cnt;
      acc.records_sumsq += cnt * cnt;
      if (recs.size() >= 2) ++acc.t2_counts[recs[1]];
      if (recs.size() >= 3) ++acc.t3_counts[recs[2]];
      if (pairs) {
        for (std::size_t a = 0; a < recs.size(); ++a) {
          for (std::size_t b = a + 1; b < recs.size(); ++b)
            ++acc.pair_counts[static_cast<std::size_t>(recs[a]) * n + recs[b]];
          if (a + 1 < recs.size()) ++acc.consecutive_counts[static_cast<std::size_t>(recs[a]) * n + recs[a + 1]];
        }
        if (recs.size() >= 3) ++acc.t2t3_counts[static_cast<std::size_t>(recs[1]) * n + recs[2]];
      }
      if (study.keep_increments && d == 1) {
        if (recs.size() >= 2) acc.increment1.push_back(x[recs[1]] - x[recs[0]]);
        if (recs.size() >= 3) acc.increment2.push_back(x[recs[2]] - x[recs[1]]);
      }
      if (study.keep_maxima && d == 1) acc.maxima.push_back(*std::max_element(x.begin(), x.end()));
    }
  });

  EmpiricalRecordStats out = empty_stats(study, d, gen.chernick());
  for (const auto& part : parts) merge(out, part);
  out.n_paths = study.n_paths;
  return out;
}

EmpiricalRecordStats simulate_chernick(int m, int n, std::size_t n_paths, std::uint64_t seed) {
  SimStudy s;
  s.process = ChernickProcess{m};
  s.n = n;
  s.n_paths = n_paths;
  s.seed = seed;
  s.keep_increments = false;
  s.value_window = {std::max(1, n / 2), n};
  return simulate_records(s);
}

EmpiricalRecordStats simulate_stable_ma(const std::vector<double>& coeffs, double alpha, double kappa, int n,
                                        std::size_t n_paths, std::uint64_t seed) {
  SimStudy s;
  s.process = StableMaProcess{coeffs, alpha, kappa};
  s.n = n;
  s.n_paths = n_paths;
  s.seed = seed;
  s.keep_increments = false;
  s.keep_maxima = true;
  return simulate_records(s);
}

Matrix sample_paths(const SimStudy& study, std::size_t count, std::size_t first) {
  const PathGenerator gen(study);
  const int cols = study.n * gen.d();
  Matrix out(count, cols);
  parallel_chunks(count, std::min<std::size_t>(std::max<std::size_t>(count, 1), 64),
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    std::vector<double> x;
                    for (std::size_t i = begin; i < end; ++i) {
                      gen.generate(first + i, x, nullptr);
                      for (int c = 0; c < cols; ++c) out(i, c) = x[c];
                    }
                  });
  return out;
}

double sample_stable(double alpha, double kappa, Rng& rng) {
  constexpr double pi = std::numbers::pi;
  const double v = pi * (rng.uniform() - 0.5);
  const double w = -std::log(rng.uniform());
  if (alpha == 1.0) {
    // The log term of the characteristic function enters with the opposite
    // sign of the usual skewness parameter.
    const double beta = -kappa;
    const double a = pi / 2 + beta * v;
    return (2.0 / pi) * (a * std::tan(v) - beta * std::log((pi / 2) * w * std::cos(v) / a));
  }
  const double beta = kappa;
  const double zeta = beta * std::tan(pi * alpha / 2);
  const double b = std::atan(zeta) / alpha;
  const double s = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));
  return s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_stable(double alpha, double kappa, std::size_t count, std::uint64_t seed) {
  require(alpha > 0 && alpha <= 2, ErrorKind::InvalidArgument, "alpha must lie in (0, 2]");
  require(std::abs(kappa) <= 1, ErrorKind::InvalidArgument, "kappa must lie in [-1, 1]");
  std::vector<double> out(count);
  Rng rng(seed);
  for (auto& v : out) v = sample_stable(alpha, kappa, rng);
  return out;
}

ExtremalIndex empirical_extremal_index(const Matrix& paths, int r, double q, std::uint64_t seed) {
  require(r >= 1, ErrorKind::InvalidArgument, "run length must be >= 1");
  require(q > 0.8 && q < 1.0, ErrorKind::InvalidArgument, "threshold quantile must lie in (0.8, 1)");
  const auto rows = paths.rows();
  const auto n = paths.cols();
  require(rows >= 1 && n > r, ErrorKind::InvalidArgument, "paths must be longer than the run length");

  std::vector<double> pooled(paths.data(), paths.data() + paths.size());
  const auto k = static_cast<std::size_t>(q * double(pooled.size() - 1));
  std::nth_element(pooled.begin(), pooled.begin() + k, pooled.end());
  const double u = pooled[k];

  std::vector<double> exceed(rows, 0.0), clusters(rows, 0.0);
  for (Eigen::Index p = 0; p < rows; ++p) {
    for (Eigen::Index i = 0; i + r < n; ++i) {
      if (!(paths(p, i) > u)) continue;
      exceed[p] += 1;
      bool ends = true;
      for (int h = 1; h <= r; ++h)
        if (paths(p, i + h) > u) ends = false;
      if (ends) clusters[p] += 1;
    }
  }
  double e = 0.0, c = 0.0;
  for (Eigen::Index p = 0; p < rows; ++p) {
    e += exceed[p];
    c += clusters[p];
  }
  require(e >= 30, ErrorKind::InsufficientExceedances,
          "only " + std::to_string(static_cast<long>(e)) + " exceedances of the threshold (need 30)");

  ExtremalIndex out;
  out.theta = c / e;
  out.provenance = "empirical";
  Rng rng(seed, kBootstrapStream);
  std::vector<double> boot;
  for (int b = 0; b < 200; ++b) {
    double eb = 0.0, cb = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto p = static_cast<Eigen::Index>(rng.uniform() * rows);
      eb += exceed[std::min(p, rows - 1)];
      cb += clusters[std::min(p, rows - 1)];
    }
    if (eb > 0) boot.push_back(cb / eb);
  }
  std::sort(boot.begin(), boot.end());
  double mean = 0.0, var = 0.0;
  for (double v : boot) mean += v;
  mean /= boot.size();
  for (double v : boot) var += (v - mean) * (v - mean);
  out.abs_error = std::sqrt(var / std::max<std::size_t>(1, boot.size() - 1));
  out.ci_low = boot[static_cast<std::size_t>(0.025 * (boot.size() - 1))];
  out.ci_high = boot[static_cast<std::size_t>(std::ceil(0.975 * (boot.size() - 1)))];
  out.flagged = !(out.theta > 0 && out.theta <= 1);
  return out;
}

}  // namespace recordlab
