#include "recordlab/multivariate.hpp"

#include "combo.hpp"
#include "recordlab/gamma.hpp"
#include "recordlab/linalg.hpp"
#include "recordlab/parallel.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

namespace recordlab {

CrossCorrelationModel CrossCorrelationModel::independent(std::vector<CorrelationModel> components) {
  require(!components.empty(), ErrorKind::InvalidArgument, "need at least one component");
  for (const auto& c : components)
    require(c.stationary(), ErrorKind::InvalidArgument, "components must be stationary");
  CrossCorrelationModel m;
  m.kind_ = Kind::Independent;
  m.d_ = static_cast<int>(components.size());
  m.components_ = std::move(components);
  return m;
}

CrossCorrelationModel CrossCorrelationModel::separable(const CorrelationModel& temporal, const Matrix& cross) {
  require(temporal.stationary(), ErrorKind::InvalidArgument, "temporal model must be stationary");
  check_correlation(cross);
  CrossCorrelationModel m;
  m.kind_ = Kind::Separable;
  m.d_ = static_cast<int>(cross.rows());
  m.temporal_ = temporal;
  m.cross_ = symmetrized(cross);
  return m;
}

CrossCorrelationModel CrossCorrelationModel::tabulated(std::vector<Matrix> blocks) {
  require(!blocks.empty(), ErrorKind::InvalidArgument, "need the lag-0 block");
  const int d = static_cast<int>(blocks[0].rows());
  for (const auto& b : blocks)
    require(b.rows() == d && b.cols() == d, ErrorKind::InvalidArgument, "cross-correlation blocks must be d x d");
  check_correlation(blocks[0]);
  CrossCorrelationModel m;
  m.kind_ = Kind::Tabulated;
  m.d_ = d;
  blocks[0] = symmetrized(blocks[0]);
  m.blocks_ = std::move(blocks);
  return m;
}

int CrossCorrelationModel::horizon() const {
  switch (kind_) {
    case Kind::Independent: {
      int h = INT_MAX;
      for (const auto& c : components_) h = std::min(h, c.horizon());
      return h;
    }
    case Kind::Separable:
      return temporal_.horizon();
    default:
      return INT_MAX;
  }
}

Matrix CrossCorrelationModel::block(int lag) const {
  require(lag >= 0, ErrorKind::InvalidArgument, "negative lag");
  switch (kind_) {
    case Kind::Independent: {
      Matrix b = Matrix::Zero(d_, d_);
      for (int c = 0; c < d_; ++c) b(c, c) = components_[c].rho(lag);
      return b;
    }
    case Kind::Separable:
      return temporal_.rho(lag) * cross_;
    default:
      return lag < static_cast<int>(blocks_.size()) ? blocks_[lag] : Matrix::Zero(d_, d_);
  }
}

Matrix CrossCorrelationModel::matrix(int n) const {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be >= 1");
  require(n <= horizon(), ErrorKind::InvalidArgument, "n exceeds the model horizon");
  std::vector<Matrix> blocks;
  for (int h = 0; h < n; ++h) blocks.push_back(block(h));
  Matrix m(n * d_, n * d_);
  for (int s = 1; s <= n; ++s) {
    for (int t = s; t <= n; ++t) {
      const Matrix& b = blocks[t - s];
      for (int c = 0; c < d_; ++c) {
        for (int e = 0; e < d_; ++e) {
          const double v = b(c, e);  // Cov(X_{c,s}, X_{e,t})
          m(stacked_index(c, s, n), stacked_index(e, t, n)) = v;
          m(stacked_index(e, t, n), stacked_index(c, s, n)) = v;
        }
      }
    }
  }
  for (int i = 0; i < m.rows(); ++i)
    for (int k = i + 1; k < m.cols(); ++k)
      require(std::abs(m(i, k)) < 1.0 - 1e-12, ErrorKind::DegenerateCorrelation,
              "expanded covariance has a unit correlation");
  require(is_positive_definite(m), ErrorKind::NotPositiveDefinite,
          "expanded " + std::to_string(n * d_) + "-dimensional covariance is not positive definite");
  return m;
}

std::string CrossCorrelationModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Independent:
      os << "independent(";
      for (int c = 0; c < d_; ++c) os << (c ? ";" : "") << components_[c].describe();
      os << ")";
      break;
    case Kind::Separable:
      os << "separable(" << temporal_.describe() << ",d=" << d_ << ")";
      break;
    default:
      os << "tabulated(d=" << d_ << ",lags=" << blocks_.size() - 1 << ")";
  }
  return os.str();
}

namespace {

// Complete record at n: X_{c,t} < X_{c,n}. Conditioning position c holds X_{c,n}.
GammaConstruction single_event(const CrossCorrelationModel& model, int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "record index must be >= 2");
  const int d = model.dim();
  Index cond;
  for (int c = 0; c < d; ++c) cond.push_back(stacked_index(c, n, n));
  return GammaConstruction(model.matrix(n), cond, [n](int i) { return Bound::below(i / n); });
}

// Complete records at j and n. Conditioning positions 2c, 2c + 1 hold X_{c,j}, X_{c,n}.
GammaConstruction pair_event(const CrossCorrelationModel& model, int j, int n) {
  require(j >= 1 && j < n, ErrorKind::InvalidArgument, "requires 1 <= j < n");
  const int d = model.dim();
  Index cond;
  for (int c = 0; c < d; ++c) {
    cond.push_back(stacked_index(c, j, n));
    cond.push_back(stacked_index(c, n, n));
  }
  return GammaConstruction(model.matrix(n), cond, [n, j](int i) {
    const int c = i / n, t = i % n + 1;
    return Bound::below(t < j ? 2 * c : 2 * c + 1);
  });
}

// Rows X_{c,j} - X_{c,n} <= 0 for every component.
Matrix pair_order_rows(int d) {
  Matrix a = Matrix::Zero(d, 2 * d);
  for (int c = 0; c < d; ++c) {
    a(c, 2 * c) = 1.0;
    a(c, 2 * c + 1) = -1.0;
  }
  return a;
}

}  // namespace

RecordLaw complete_record_prob(const CrossCorrelationModel& model, int n, const NumericOptions& opt) {
  const auto g = single_event(model, n);
  Combo c;
  c.add(1.0, g.probability(mvn_options(opt, opt.seed)));
  return law(c, opt);
}

RecordLaw complete_record_cdf(const CrossCorrelationModel& model, int n, const Vector& x,
                              const NumericOptions& opt) {
  require(x.size() == model.dim(), ErrorKind::InvalidArgument, "x must have one entry per component");
  const auto g = single_event(model, n);
  const auto mo = mvn_options(opt, opt.seed);
  Combo num, den;
  num.add(1.0, g.mass(Matrix::Identity(model.dim(), model.dim()), x, mo));
  den.add(1.0, g.probability(mo));
  return ratio(num, den, opt);
}

RecordLaw joint_complete_record_prob(const CrossCorrelationModel& model, int j, int n,
                                     const NumericOptions& opt) {
  const auto g = pair_event(model, j, n);
  Combo c;
  c.add(1.0, g.mass(pair_order_rows(model.dim()), Vector::Zero(model.dim()), mvn_options(opt, opt.seed)));
  return law(c, opt);
}

RecordLaw joint_complete_record_cdf(const CrossCorrelationModel& model, int j, int n, const Vector& x1,
                                    const Vector& x2, const NumericOptions& opt) {
  const int d = model.dim();
  require(x1.size() == d && x2.size() == d, ErrorKind::InvalidArgument, "x1 and x2 need one entry per component");
  require(d <= 4, ErrorKind::SubsetExplosion,
          "joint complete-record cdf needs 3^d integrals; d = " + std::to_string(d) + " exceeds 4");
  const auto g = pair_event(model, j, n);
  const auto mo = mvn_options(opt, opt.seed);

  // Per component, with Y = X_{c,j}, Z = X_{c,n}, a = min(x1, x2), b = x2:
  //   {Y <= x1, Z <= b, Y < Z} = {Y <= a, a < Z <= b} + {Y - Z < 0, Z <= a},
  // and the first piece is {Y <= a, Z <= b} - {Y <= a, Z <= a}. Expanding the
  // product over components gives 3^d signed terms.
  std::vector<std::vector<int>> terms{{}};
  for (int c = 0; c < d; ++c) {
    const bool split = x2(c) > std::min(x1(c), x2(c));  // else the first piece vanishes
    std::vector<std::vector<int>> next;
    for (const auto& t : terms) {
      for (int k = split ? 0 : 2; k < 3; ++k) {
        auto u = t;
        u.push_back(k);
        next.push_back(std::move(u));
      }
    }
    terms = std::move(next);
  }

  std::vector<MvnResult> results(terms.size());
  std::vector<double> signs(terms.size());
  parallel_chunks(terms.size(), terms.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Matrix a = Matrix::Zero(2 * d, 2 * d);
      Vector t(2 * d);
      double sign = 1.0;
      for (int c = 0; c < d; ++c) {
        const double lo = std::min(x1(c), x2(c));
        const int k = terms[i][c];
        if (k == 2) {
          a(2 * c, 2 * c) = 1.0;
          a(2 * c, 2 * c + 1) = -1.0;
          t(2 * c) = 0.0;
        } else {
          a(2 * c, 2 * c) = 1.0;
          t(2 * c) = lo;
        }
        a(2 * c + 1, 2 * c + 1) = 1.0;
        t(2 * c + 1) = k == 0 ? x2(c) : lo;
        if (k == 1) sign = -sign;
      }
      signs[i] = sign;
      results[i] = g.mass(a, t, mo);
    }
  });
  Combo num;
  for (std::size_t i = 0; i < terms.size(); ++i) num.add(signs[i], results[i]);
  Combo den;
  den.add(1.0, g.mass(pair_order_rows(d), Vector::Zero(d), mo));
  return ratio(num, den, opt);
}

}  // namespace recordlab
