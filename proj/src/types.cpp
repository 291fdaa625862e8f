#include "ahx/types.hpp"

namespace ahx {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OwnerMismatch: return "OwnerMismatch";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DegenerateDegree: return "DegenerateDegree";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::ParameterOrder: return "ParameterOrder";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::LayerMismatch: return "LayerMismatch";
    case ErrorKind::MismatchedData: return "MismatchedData";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::UnknownExample: return "UnknownExample";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(root_tol > 0 && rank_rel_tol > 0 && lp_feas_tol > 0 && convex_tol > 0)) {
    throw Error(ErrorKind::ValidationError, "tolerances must be strictly positive");
  }
}

}  // namespace ahx
