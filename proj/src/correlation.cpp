#include "recordlab/correlation.hpp"

#include "recordlab/error.hpp"
#include "recordlab/linalg.hpp"

#include <climits>
#include <cmath>
#include <sstream>

namespace recordlab {

CorrelationModel CorrelationModel::iid() { return {}; }

CorrelationModel CorrelationModel::ar1(double phi) {
  require(std::abs(phi) < 1.0, ErrorKind::DegenerateCorrelation, "ar1 requires |phi| < 1");
  CorrelationModel m;
  m.kind_ = Kind::Ar1;
  m.param_ = phi;
  return m;
}

CorrelationModel CorrelationModel::equicorrelated(double rho) {
  require(std::abs(rho) < 1.0, ErrorKind::DegenerateCorrelation, "equicorrelation requires |rho| < 1");
  CorrelationModel m;
  m.kind_ = Kind::Equicorrelated;
  m.param_ = rho;
  return m;
}

CorrelationModel CorrelationModel::tabulated(std::vector<double> rhos, TailRule tail) {
  require(!rhos.empty(), ErrorKind::InvalidArgument, "tabulated model needs at least one lag");
  for (double r : rhos)
    require(std::abs(r) <= 1.0, ErrorKind::InvalidArgument, "autocorrelations must lie in [-1, 1]");
  CorrelationModel m;
  m.kind_ = Kind::Tabulated;
  m.table_ = std::move(rhos);
  m.tail_ = tail;
  return m;
}

CorrelationModel CorrelationModel::explicit_matrix(const Matrix& mat) {
  check_correlation(mat);
  CorrelationModel m;
  m.kind_ = Kind::Explicit;
  m.explicit_ = symmetrized(mat);
  return m;
}

CorrelationModel CorrelationModel::unit_gamma(double r) {
  require(r > 0.5 && r < 1.0, ErrorKind::InvalidArgument, "unit_gamma requires 0.5 < r < 1");
  CorrelationModel m;
  m.kind_ = Kind::UnitGamma;
  m.param_ = r;
  return m;
}

int CorrelationModel::horizon() const {
  switch (kind_) {
    case Kind::Explicit:
      return static_cast<int>(explicit_.rows());
    case Kind::Tabulated:
      return tail_ == TailRule::Truncate ? static_cast<int>(table_.size()) + 1 : INT_MAX;
    case Kind::UnitGamma:
      // n - 1 < 2 / (1 - r), strictly.
      return static_cast<int>(std::ceil(2.0 / (1.0 - param_)));
    default:
      return INT_MAX;
  }
}

double CorrelationModel::rho(int lag) const {
  require(stationary(), ErrorKind::InvalidArgument, "rho(lag) needs a stationary model");
  require(lag >= 0, ErrorKind::InvalidArgument, "negative lag");
  if (lag == 0) return 1.0;
  switch (kind_) {
    case Kind::Iid:
      return 0.0;
    case Kind::Ar1:
      return std::pow(param_, lag);
    case Kind::Equicorrelated:
      return param_;
    case Kind::Tabulated: {
      const int h = static_cast<int>(table_.size());
      if (lag <= h) return table_[lag - 1];
      if (tail_ == TailRule::Zero) return 0.0;
      if (tail_ == TailRule::Truncate) raise(ErrorKind::InvalidArgument, "lag beyond the tabulated horizon");
      const double last = table_.back();
      const double prev = h >= 2 ? table_[h - 2] : 1.0;
      if (prev == 0.0) return 0.0;
      return last * std::pow(last / prev, lag - h);
    }
    default:
      break;
  }
  return 0.0;
}

Matrix CorrelationModel::matrix(int n) const {
  require(n >= 1, ErrorKind::InvalidArgument, "matrix size must be positive");
  require(n <= horizon(), ErrorKind::InvalidArgument,
          "model horizon " + std::to_string(horizon()) + " is below " + std::to_string(n));
  Matrix m(n, n);
  if (kind_ == Kind::Explicit) {
    m = explicit_.topLeftCorner(n, n);
  } else if (kind_ == Kind::UnitGamma) {
    m.setConstant(2.0 * param_ - 1.0);
    m.row(n - 1).setConstant(param_);
    m.col(n - 1).setConstant(param_);
    m.diagonal().setOnes();
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rho(std::abs(i - j));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require(std::abs(m(i, j)) < 1.0 - 1e-12, ErrorKind::DegenerateCorrelation,
              describe() + " has correlation +-1 between X_" + std::to_string(i + 1) + " and X_" +
                  std::to_string(j + 1));
  try {
    cholesky(m);
  } catch (const Error& e) {
    raise(ErrorKind::NotPositiveDefinite,
          describe() + " does not give a positive definite matrix at n=" + std::to_string(n) + " (" +
              e.what() + ")");
  }
  return m;
}

std::string CorrelationModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Iid:
      os << "iid";
      break;
    case Kind::Ar1:
      os << "ar1(" << param_ << ")";
      break;
    case Kind::Equicorrelated:
      os << "equi(" << param_ << ")";
      break;
    case Kind::Tabulated:
      os << "tabulated(H=" << table_.size() << ")";
      break;
    case Kind::Explicit:
      os << "explicit(" << explicit_.rows() << ")";
      break;
    case Kind::UnitGamma:
      os << "unit_gamma(" << param_ << ")";
      break;
  }
  return os.str();
}

}  // namespace recordlab
