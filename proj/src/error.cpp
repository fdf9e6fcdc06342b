#include "recordlab/error.hpp"

namespace recordlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::EmptyPartition: return "EmptyPartition";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::DegenerateNormalization: return "DegenerateNormalization";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::AcceptanceTooLow: return "AcceptanceTooLow";
    case ErrorKind::DegenerateCorrelation: return "DegenerateCorrelation";
    case ErrorKind::InvalidGamma: return "InvalidGamma";
    case ErrorKind::InvalidTimes: return "InvalidTimes";
    case ErrorKind::TailNotConverged: return "TailNotConverged";
    case ErrorKind::AllZeroCoefficients: return "AllZeroCoefficients";
    case ErrorKind::InvalidDeltaMatrix: return "InvalidDeltaMatrix";
    case ErrorKind::MissingDelta: return "MissingDelta";
    case ErrorKind::SubsetExplosion: return "SubsetExplosion";
    case ErrorKind::InsufficientExceedances: return "InsufficientExceedances";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) { return kind == ErrorKind::TailNotConverged; }

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace recordlab
