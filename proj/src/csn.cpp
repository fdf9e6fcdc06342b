#include "recordlab/csn.hpp"

#include "recordlab/error.hpp"
#include "recordlab/linalg.hpp"
#include "recordlab/parallel.hpp"
#include "recordlab/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>

namespace recordlab {

namespace {

void check_pd(const Matrix& m, const char* name) {
  try {
    cholesky(m);
  } catch (const Error& e) {
    raise(e.kind(), std::string(name) + ": " + e.what());
  }
}

}  // namespace

CsnParams CsnParams::make(Vector xi, Matrix omega, Matrix delta, Vector mu, Matrix sigma) {
  const auto m = omega.rows();
  const auto n = sigma.rows();
  require(omega.cols() == m && xi.size() == m, ErrorKind::InvalidArgument,
          "CSN: xi/Omega dimensions disagree");
  require(sigma.cols() == n && mu.size() == n, ErrorKind::InvalidArgument,
          "CSN: mu/Sigma dimensions disagree");
  require(delta.rows() == n && delta.cols() == m, ErrorKind::InvalidArgument,
          "CSN: Delta must be n x m");
  require(m > 0, ErrorKind::InvalidArgument, "CSN: m must be positive");
  CsnParams p{std::move(xi), symmetrized(omega), std::move(delta), std::move(mu),
              n > 0 ? symmetrized(sigma) : sigma};
  check_pd(p.omega, "Omega");
  if (n > 0) {
    check_pd(p.sigma, "Sigma");
    check_pd(p.gamma(), "Gamma");
  }
  return p;
}

CsnParams CsnParams::standard(const Matrix& delta, const Matrix& sigma) {
  const auto m = delta.cols();
  return make(Vector::Zero(m), Matrix::Identity(m, m), delta, Vector::Zero(delta.rows()), sigma);
}

CsnParams CsnParams::centered(Matrix omega, Matrix delta, Vector mu, Matrix sigma) {
  const auto m = omega.rows();
  return make(Vector::Zero(m), std::move(omega), std::move(delta), std::move(mu), std::move(sigma));
}

MvnResult csn_normalizer(const CsnParams& p, const MvnOptions& opt) {
  if (p.n() == 0) return MvnResult{1.0, 0.0, 0, true, 0};
  return mvn_orthant(-p.mu, p.gamma(), opt);
}

MvnResult csn_joint(const Vector& x, const CsnParams& p, const MvnOptions& opt) {
  const int m = p.m(), n = p.n();
  require(x.size() == m, ErrorKind::InvalidArgument, "CSN: x has the wrong length");
  Matrix big(n + m, n + m);
  const Matrix cross = -p.delta * p.omega;  // n x m
  big.topLeftCorner(n, n) = p.gamma();
  big.topRightCorner(n, m) = cross;
  big.bottomLeftCorner(m, n) = cross.transpose();
  big.bottomRightCorner(m, m) = p.omega;
  Vector upper(n + m);
  upper.head(n) = -p.mu;
  upper.tail(m) = x - p.xi;
  return mvn_orthant(upper, big, opt);
}

Estimate csn_cdf(const Vector& x, const CsnParams& p, const MvnOptions& opt) {
  const MvnResult num = csn_joint(x, p, opt);
  const MvnResult den = csn_normalizer(p, opt);
  require(den.value >= 1e-12, ErrorKind::DegenerateNormalization,
          "CSN normalizer below 1e-12");
  Estimate e;
  e.value = std::clamp(num.value / den.value, 0.0, 1.0);
  e.abs_error = (num.abs_error + e.value * den.abs_error) / den.value;
  e.converged = num.converged && den.converged;
  return e;
}

Estimate csn_pdf(const Vector& x, const CsnParams& p, const MvnOptions& opt) {
  const int m = p.m();
  require(x.size() == m, ErrorKind::InvalidArgument, "CSN: x has the wrong length");
  const Matrix l = cholesky(p.omega);
  const Vector d = x - p.xi;
  const Vector z = l.triangularView<Eigen::Lower>().solve(d);
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  const double phi =
      std::exp(-0.5 * z.squaredNorm() - 0.5 * log_det - 0.5 * m * std::log(2.0 * std::numbers::pi));
  if (p.n() == 0) return Estimate{phi, 0.0, true};

  MvnProblem skew{Vector::Constant(p.n(), -kInf), p.delta * d, p.mu, p.sigma};
  const MvnResult num = mvn_cdf(skew, opt);
  const MvnResult den = csn_normalizer(p, opt);
  require(den.value >= 1e-12, ErrorKind::DegenerateNormalization,
          "CSN normalizer below 1e-12");
  Estimate e;
  const double ratio = num.value / den.value;
  e.value = phi * ratio;
  e.abs_error = phi * (num.abs_error + ratio * den.abs_error) / den.value;
  e.converged = num.converged && den.converged;
  return e;
}

CsnParams csn_affine(const Matrix& a, const Vector& b, const CsnParams& p) {
  require(a.cols() == p.m() && b.size() == a.rows(), ErrorKind::InvalidArgument,
          "affine map dimensions disagree");
  require(a.rows() <= p.m(), ErrorKind::RankDeficient, "affine map has more rows than columns");
  const Eigen::FullPivLU<Matrix> lu(a);
  require(lu.rank() == a.rows(), ErrorKind::RankDeficient, "affine map is not of full row rank");

  Matrix omega_star = a * p.omega * a.transpose();
  omega_star = (omega_star + omega_star.transpose()) / 2.0;
  const Eigen::LLT<Matrix> llt(omega_star);
  require(llt.info() == Eigen::Success, ErrorKind::RankDeficient, "A Omega A^T is singular");
  // Delta* = Delta Omega A^T (Omega*)^{-1}
  const Matrix delta_star = llt.solve(a * p.omega * p.delta.transpose()).transpose();
  Matrix sigma_star = p.gamma() - delta_star * a * p.omega * p.delta.transpose();
  sigma_star = (sigma_star + sigma_star.transpose()) / 2.0;
  return CsnParams::make(a * p.xi + b, omega_star, delta_star, p.mu, sigma_star);
}

CsnSample csn_sample(std::size_t n_paths, const CsnParams& p, std::uint64_t seed) {
  CsnSample out;
  MvnOptions opt;
  opt.seed = seed;
  opt.tol = 1e-5;
  out.acceptance = csn_normalizer(p, opt).value;
  require(out.acceptance >= 1e-4, ErrorKind::AcceptanceTooLow,
          "CSN acceptance probability " + std::to_string(out.acceptance) + " is below 1e-4");
  const int m = p.m(), n = p.n();
  const Matrix lo = cholesky(p.omega);
  const Matrix ls = n > 0 ? cholesky(p.sigma) : Matrix(0, 0);
  out.draws.resize(n_paths, m);
  const std::size_t chunks = std::max<std::size_t>(1, n_paths / 2048);
  std::vector<std::uint64_t> attempts(chunks, 0);
  parallel_chunks(n_paths, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Vector zu(m), zv(n);
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(seed, i);
      while (true) {
        ++attempts[c];
        for (int k = 0; k < m; ++k) zu(k) = rng.normal();
        for (int k = 0; k < n; ++k) zv(k) = rng.normal();
        const Vector centered = lo * zu;
        const Vector lat = p.delta * centered + ls * zv;
        if (n == 0 || (lat - p.mu).minCoeff() > 0.0) {
          out.draws.row(i) = (centered + p.xi).transpose();
          break;
        }
      }
    }
  });
  for (auto a : attempts) out.attempts += a;
  return out;
}

namespace {

using nlohmann::json;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Matrix matrix_from(const json& j, Eigen::Index rows, Eigen::Index cols, const char* name) {
  require(j.is_array() && static_cast<Eigen::Index>(j.size()) == rows, ErrorKind::Io,
          std::string("CSN json: ") + name + " has the wrong number of rows");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, ErrorKind::Io,
            std::string("CSN json: ") + name + " has the wrong number of columns");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row[k].get<double>();
  }
  return m;
}

Vector vector_from(const json& j, Eigen::Index size, const char* name) {
  require(j.is_array() && static_cast<Eigen::Index>(j.size()) == size, ErrorKind::Io,
          std::string("CSN json: ") + name + " has the wrong length");
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = j[i].get<double>();
  return v;
}

}  // namespace

std::string csn_to_json(const CsnParams& p) {
  json j;
  j["m"] = p.m();
  j["n"] = p.n();
  j["xi"] = to_json(p.xi);
  j["omega"] = to_json(p.omega);
  j["delta"] = to_json(p.delta);
  j["mu"] = to_json(p.mu);
  j["sigma"] = to_json(p.sigma);
  return j.dump(2);
}

CsnParams csn_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    require(m > 0 && n >= 0, ErrorKind::Io, "CSN json: bad dimensions");
    return CsnParams::make(vector_from(j.at("xi"), m, "xi"), matrix_from(j.at("omega"), m, m, "omega"),
                           n ? matrix_from(j.at("delta"), n, m, "delta") : Matrix(0, m),
                           vector_from(j.at("mu"), n, "mu"),
                           n ? matrix_from(j.at("sigma"), n, n, "sigma") : Matrix(0, 0));
  } catch (const json::exception& e) {
    raise(ErrorKind::Io, std::string("CSN json: ") + e.what());
  }
}

}  // namespace recordlab
