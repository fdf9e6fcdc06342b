#pragma once

#include "recordlab/correlation.hpp"
#include "recordlab/multivariate.hpp"
#include "recordlab/types.hpp"

#include <string>

namespace recordlab {

// Comma-separated numbers, one row per line. Blank lines and lines starting
// with '#' are skipped; "inf"/"-inf" are accepted. All failures raise Io.
Matrix read_csv_matrix(const std::string& path);
Matrix parse_csv_matrix(const std::string& text);

// A model file is either an autocorrelation table (optional "lag,value"
// header, rows h,rho_h for h = 1..H) or a square correlation matrix.
CorrelationModel read_model_file(const std::string& path, TailRule tail = TailRule::Zero);
CorrelationModel parse_model(const std::string& text, TailRule tail = TailRule::Zero);

// Cross-correlation blocks: a line "lag,<h>" opens the d x d block at lag h,
// followed by d rows. Lags must run 0..H without gaps.
CrossCorrelationModel read_cross_file(const std::string& path);
CrossCorrelationModel parse_cross(const std::string& text);

// Raw dump: "RLAB", uint32 version (1), uint64 rows, uint64 cols, then
// rows * cols little-endian doubles in column-major order.
void write_binary(const std::string& path, const Matrix& m);
Matrix read_binary(const std::string& path);

}  // namespace recordlab
