#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ahx {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class ErrorKind {
  OwnerMismatch,
  DegreeOverflow,
  NonConvergence,
  DegenerateDegree,
  DomainMismatch,
  InvalidParameter,
  ParameterOrder,
  NotARoot,
  LayerMismatch,
  MismatchedData,
  InvalidArgument,
  ParseError,
  ValidationError,
  UnknownExample,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Validation-class failures (bad input) as opposed to numerical failures.
  bool is_validation() const noexcept {
    return kind_ == ErrorKind::ParseError || kind_ == ErrorKind::ValidationError ||
           kind_ == ErrorKind::UnknownExample;
  }

 private:
  ErrorKind kind_;
};

/// Numerical thresholds shared by every module. All fields must be strictly positive.
struct Tolerances {
  double root_tol = 1e-10;      // root residual bound, relative to 1 + sum |c_k|
  double rank_rel_tol = 1e-12;  // singular value cutoff factor: s_max * dim * rank_rel_tol
  double lp_feas_tol = 1e-9;    // phase-1 objective below this counts as feasible
  double convex_tol = 1e-8;     // duality gap target for quotient norms

  void validate() const;
};

/// Componentwise absolute tolerance for comparing elements.
inline constexpr double kElementTol = 1e-9;
/// Roots closer than this are the same root.
inline constexpr double kRootClusterTol = 1e-7;
/// Characters whose value rows agree this closely are the same character.
inline constexpr double kCharacterMergeTol = 1e-8;

}  // namespace ahx
