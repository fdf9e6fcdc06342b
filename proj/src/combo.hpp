#pragma once

// Shared bookkeeping for estimates built from several MVN integrals.

#include "recordlab/error.hpp"
#include "recordlab/mvn.hpp"
#include "recordlab/records.hpp"

#include <algorithm>
#include <cmath>

namespace recordlab {

inline MvnOptions mvn_options(const NumericOptions& o, std::uint64_t seed) {
  MvnOptions m = MvnOptions::from(o);
  m.seed = seed;
  return m;
}

// Linear combination of integrals with first-order error bookkeeping.
struct Combo {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  int dim = 0;

  Combo& add(double coef, const MvnResult& r) {
    value += coef * r.value;
    abs_error += std::abs(coef) * r.abs_error;
    converged = converged && r.converged;
    dim = std::max(dim, r.dim);
    return *this;
  }
};

inline RecordLaw law(const Combo& c, const NumericOptions& opt) {
  RecordLaw r;
  r.value = std::clamp(c.value, 0.0, 1.0);
  r.abs_error = c.abs_error;
  r.converged = c.converged;
  r.dim = c.dim;
  r.seed = opt.seed;
  r.tol = opt.tol.value_or(0.0);
  return r;
}

// num / den with propagated error.
inline RecordLaw ratio(const Combo& num, const Combo& den, const NumericOptions& opt) {
  require(den.value >= 1e-12, ErrorKind::DegenerateNormalization,
          "conditioning event probability below 1e-12");
  Combo c;
  c.value = num.value / den.value;
  c.abs_error = (num.abs_error + std::abs(c.value) * den.abs_error) / den.value;
  c.converged = num.converged && den.converged;
  c.dim = std::max(num.dim, den.dim);
  return law(c, opt);
}

}  // namespace recordlab
