#pragma once

#include "recordlab/correlation.hpp"
#include "recordlab/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace recordlab {

struct ValidationCheck {
  std::string name;
  double expected = 0.0;  // closed form or exact value
  double observed = 0.0;  // simulation or second evaluation
  double bound = 0.0;     // allowed |expected - observed|
  bool pass = false;
};

struct ValidationReport {
  std::string suite;
  std::vector<ValidationCheck> checks;
  [[nodiscard]] bool passed() const;
};

struct ValidationOptions {
  int n_max = 8;
  std::size_t paths = 200000;
  NumericOptions numeric;
  // Model for the gaussian suite.
  CorrelationModel model = CorrelationModel::ar1(0.5);
};

// Suites: iid, gaussian, csn, asymptotic, multivariate, all.
std::vector<std::string> validation_suites();
ValidationReport run_validation(const std::string& suite, const ValidationOptions& opt);

}  // namespace recordlab
