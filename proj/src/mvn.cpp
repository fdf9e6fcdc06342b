#include "recordlab/mvn.hpp"

#include "recordlab/error.hpp"
#include "recordlab/linalg.hpp"
#include "recordlab/normal.hpp"
#include "recordlab/parallel.hpp"
#include "recordlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace recordlab {

namespace {

// Prepared integrand: reordered bounds scaled by the Cholesky diagonal.
struct Sov {
  int n = 0;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> l;  // rows scaled by 1/L_ii
  Vector a, b;
};

double truncated_mean(double a, double b) {
  const double pa = norm_cdf(a), pb = norm_cdf(b);
  const double mass = pb - pa;
  if (mass < 1e-300) {
    if (a == -kInf) return b;
    if (b == kInf) return a;
    return (a + b) / 2.0;
  }
  const double da = std::isinf(a) ? 0.0 : norm_pdf(a);
  const double db = std::isinf(b) ? 0.0 : norm_pdf(b);
  return (da - db) / mass;
}

// Cholesky with Genz-Bretz reordering on a correlation matrix. Bounds are
// already standardized.
Sov prepare(Matrix c, Vector a, Vector b) {
  const int n = static_cast<int>(c.rows());
  Matrix l = Matrix::Zero(n, n);
  Vector y = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    int best = i;
    double best_mass = kInf;
    for (int j = i; j < n; ++j) {
      const double var = c(j, j) - l.row(j).head(i).squaredNorm();
      if (var <= 0.0) continue;
      const double sd = std::sqrt(var);
      const double shift = l.row(j).head(i).dot(y.head(i));
      const double mass = norm_cdf((b(j) - shift) / sd) - norm_cdf((a(j) - shift) / sd);
      if (mass < best_mass) {
        best_mass = mass;
        best = j;
      }
    }
    if (best != i) {
      c.row(i).swap(c.row(best));
      c.col(i).swap(c.col(best));
      l.row(i).swap(l.row(best));
      std::swap(a(i), a(best));
      std::swap(b(i), b(best));
    }
    const double var = c(i, i) - l.row(i).head(i).squaredNorm();
    if (!(var > 1e-13)) {
      raise(ErrorKind::NotPositiveDefinite,
            "covariance is not positive definite (pivot " + std::to_string(i + 1) + ")");
    }
    const double d = std::sqrt(var);
    l(i, i) = d;
    for (int j = i + 1; j < n; ++j) {
      l(j, i) = (c(j, i) - l.row(j).head(i).dot(l.row(i).head(i))) / d;
    }
    const double shift = l.row(i).head(i).dot(y.head(i));
    y(i) = truncated_mean((a(i) - shift) / d, (b(i) - shift) / d);
  }
  Sov s;
  s.n = n;
  for (int i = 0; i < n; ++i) {
    const double d = l(i, i);
    a(i) /= d;
    b(i) /= d;
    l.row(i) /= d;
  }
  s.l = std::move(l);
  s.a = std::move(a);
  s.b = std::move(b);
  return s;
}

double cdf_or_bound(double x) {
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  return norm_cdf(x);
}

// Integrand on [0,1]^{n-1}. `y` is scratch space of length n.
double integrand(const Sov& s, const double* w, double* y) {
  double d = cdf_or_bound(s.a(0));
  double e = cdf_or_bound(s.b(0));
  double f = e - d;
  for (int i = 1; i < s.n; ++i) {
    if (f <= 0.0) return 0.0;
    const double u = std::clamp(d + w[i - 1] * (e - d), 1e-300, 1.0 - 1e-16);
    y[i - 1] = norm_quantile(u);
    const double* row = s.l.data() + static_cast<std::ptrdiff_t>(i) * s.n;
    double shift = 0.0;
    for (int j = 0; j < i; ++j) shift += row[j] * y[j];
    d = cdf_or_bound(s.a(i) - shift);
    e = cdf_or_bound(s.b(i) - shift);
    f *= e - d;
  }
  return f;
}

// Richtmyer generator: fractional parts of square roots of primes.
const std::vector<double>& richtmyer() {
  static const std::vector<double> z = [] {
    std::vector<double> out;
    for (int p = 2; out.size() < 64; ++p) {
      bool prime = true;
      for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) {
          prime = false;
          break;
        }
      if (prime) {
        const double r = std::sqrt(static_cast<double>(p));
        out.push_back(r - std::floor(r));
      }
    }
    return out;
  }();
  return z;
}

MvnResult integrate(const Sov& s, const MvnOptions& opt, double tol) {
  const int m = s.n - 1;
  const auto& z = richtmyer();
  require(m <= static_cast<int>(z.size()), ErrorKind::DimensionCap,
          "lattice generator supports at most 65 dimensions");
  const int shifts = std::max(opt.shifts, 2);

  Rng rng(opt.seed, 0x6d766e);
  std::vector<std::vector<double>> delta(shifts, std::vector<double>(m));
  for (auto& v : delta)
    for (double& x : v) x = rng.uniform();

  // The Kronecker sequence is extensible: each doubling only adds the points
  // (done, target], so running sums carry over.
  MvnResult res;
  res.dim = s.n;
  std::vector<double> sums(shifts, 0.0);
  std::size_t done = 0;
  std::size_t target = 512;
  while (true) {
    parallel_chunks(shifts, shifts, [&](std::size_t k, std::size_t, std::size_t) {
      std::vector<double> w(m), wa(m), y(s.n);
      double sum = 0.0;
      for (std::size_t p = done + 1; p <= target; ++p) {
        for (int j = 0; j < m; ++j) {
          double x = static_cast<double>(p) * z[j] + delta[k][j];
          x -= std::floor(x);
          x = std::abs(2.0 * x - 1.0);
          w[j] = x;
          wa[j] = 1.0 - x;
        }
        sum += integrand(s, w.data(), y.data()) + integrand(s, wa.data(), y.data());
      }
      sums[k] += sum;
    });
    done = target;
    std::vector<double> means(shifts);
    for (int k = 0; k < shifts; ++k) means[k] = sums[k] / (2.0 * static_cast<double>(done));
    const double mean = std::accumulate(means.begin(), means.end(), 0.0) / shifts;
    double var = 0.0;
    for (double v : means) var += (v - mean) * (v - mean);
    var /= static_cast<double>(shifts) * (shifts - 1);
    res.value = mean;
    res.abs_error = 3.0 * std::sqrt(var);
    res.points_used = 2 * done * shifts;
    if (res.abs_error <= tol) break;
    if (2 * res.points_used > opt.max_points) break;
    target *= 2;
  }
  res.converged = res.abs_error <= tol;
  res.value = std::clamp(res.value, 0.0, 1.0);
  return res;
}

}  // namespace

double default_tolerance(int dim) { return dim <= 10 ? 1e-6 : 1e-5; }

MvnResult mvn_cdf(const MvnProblem& p, const MvnOptions& opt) {
  const Eigen::Index n = p.cov.rows();
  require(p.cov.cols() == n && p.lower.size() == n && p.upper.size() == n,
          ErrorKind::InvalidArgument, "MVN problem dimensions disagree");
  require(p.mean.size() == 0 || p.mean.size() == n, ErrorKind::InvalidArgument,
          "MVN mean has the wrong length");
  if (opt.tol) require(*opt.tol >= 1e-8, ErrorKind::InvalidArgument, "tol must be >= 1e-8");

  Matrix cov = symmetrized(p.cov);
  if (opt.jitter > 0.0) cov.diagonal().array() += opt.jitter;

  Index keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    require(!std::isnan(p.lower(i)) && !std::isnan(p.upper(i)), ErrorKind::InvalidArgument,
            "MVN bounds must not be NaN");
    if (p.lower(i) == -kInf && p.upper(i) == kInf) continue;
    keep.push_back(static_cast<int>(i));
  }
  MvnResult res;
  res.dim = static_cast<int>(keep.size());
  require(res.dim <= opt.max_dim, ErrorKind::DimensionCap,
          "effective dimension " + std::to_string(res.dim) + " exceeds cap " +
              std::to_string(opt.max_dim));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p.lower(i) >= p.upper(i)) return res;
  }
  if (keep.empty()) {
    res.value = 1.0;
    return res;
  }

  Vector sd;
  const Matrix sub = select(cov, keep, keep);
  const Matrix corr = standardize(sub, &sd);
  Vector a(keep.size()), b(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const double mu = p.mean.size() ? p.mean(keep[i]) : 0.0;
    a(i) = (p.lower(keep[i]) - mu) / sd(i);
    b(i) = (p.upper(keep[i]) - mu) / sd(i);
  }

  if (res.dim == 1) {
    res.value = std::clamp(cdf_or_bound(b(0)) - cdf_or_bound(a(0)), 0.0, 1.0);
    return res;
  }
  if (res.dim == 2) {
    const double r = corr(0, 1);
    require(std::abs(r) < 1.0 - 1e-14, ErrorKind::NotPositiveDefinite,
            "bivariate correlation is +-1");
    res.value = bvn_rect(a(0), b(0), a(1), b(1), r);
    return res;
  }
  const Sov s = prepare(corr, a, b);
  const double tol = opt.tol.value_or(default_tolerance(res.dim));
  MvnResult out = integrate(s, opt, tol);
  return out;
}

MvnResult mvn_orthant(const Vector& upper, const Matrix& cov, const MvnOptions& opt) {
  MvnProblem p;
  p.lower = Vector::Constant(upper.size(), -kInf);
  p.upper = upper;
  p.cov = cov;
  return mvn_cdf(p, opt);
}

Matrix mvn_sample(std::size_t n_paths, const Vector& mean, const Matrix& cov, std::uint64_t seed) {
  const Matrix l = cholesky(cov);
  const Eigen::Index d = l.rows();
  require(mean.size() == 0 || mean.size() == d, ErrorKind::InvalidArgument,
          "mean has the wrong length");
  Matrix out(n_paths, d);
  parallel_chunks(n_paths, std::max<std::size_t>(1, n_paths / 4096), [&](std::size_t, std::size_t b, std::size_t e) {
    Vector z(d);
    for (std::size_t i = b; i < e; ++i) {
      Rng rng(seed, i);
      for (Eigen::Index k = 0; k < d; ++k) z(k) = rng.normal();
      Vector x = l * z;
      if (mean.size()) x += mean;
      out.row(i) = x.transpose();
    }
  });
  return out;
}

}  // namespace recordlab
