#pragma once

// Cole's construction on finite models.
//
// Over a finite space S carrying a function algebra (given by an orthonormal
// basis of functions), each monic polynomial with coefficients in the algebra
// is solved pointwise. The fiber space pairs a point of S with one root per
// polynomial, and the Cole algebra is the subalgebra of functions on the fiber
// generated by the pulled-back functions and the root functions p.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ahx/algebra.hpp"
#include "ahx/extension.hpp"
#include "ahx/gelfand.hpp"
#include "ahx/poly.hpp"

namespace ahx {

/// Monic polynomial whose coefficients are functions on a finite space:
/// lower[k][s] is a_k at point s.
struct SpacePoly {
  std::vector<CVector> lower;
  std::size_t degree() const { return lower.size(); }
};

/// Values of alpha's coefficients on the ground points of its owner.
SpacePoly on_points(const MonicPoly& alpha);

struct FiberPoint {
  std::size_t base = 0;        // index in the underlying space
  std::vector<Complex> roots;  // one per polynomial
};

/// Points x basis matrix of the values of A's basis elements (ground backends).
CMatrix function_values(const AlgebraHandle& a);

std::vector<FiberPoint> cole_space(std::size_t base_size, const std::vector<SpacePoly>& polys,
                                   const Tolerances& tol = {});
std::vector<FiberPoint> cole_space(const AlgebraHandle& a, const std::vector<MonicPoly>& polys,
                                   const Tolerances& tol = {});

struct ColeAlgebra {
  std::size_t base_size = 0;
  std::vector<SpacePoly> polys;
  std::vector<FiberPoint> space;
  CMatrix basis;                    // |space| x dim, orthonormal columns
  std::vector<CVector> root_functions;
  int closure_rounds = 0;

  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
  /// f o pi for a function f on the underlying space.
  CVector pull_back(const CVector& f) const;
  /// Distance from f to the algebra, relative to max(1, ||f||_2).
  double membership_residual(const CVector& f) const;
  bool contains(const CVector& f, double tol = 1e-9) const { return membership_residual(f) <= tol; }
  /// Every pair of fiber points is told apart by some basis function (by more than tol).
  bool separates_points(double tol = 1e-9) const;
};

/// Generated subalgebra over an underlying function algebra whose values are
/// the columns of base_functions (points x functions; constants implied).
ColeAlgebra cole_extend(const CMatrix& base_functions, const std::vector<SpacePoly>& polys,
                        const Tolerances& tol = {});
ColeAlgebra cole_algebra(const AlgebraHandle& a, const std::vector<MonicPoly>& polys, const Tolerances& tol = {});

/// Characters of the Cole algebra are the distinct point evaluations; natural
/// when there is one per fiber point.
struct NaturalityReport {
  std::size_t space_size = 0;
  std::size_t character_count = 0;
  std::size_t distinct_evaluations = 0;
  bool natural = false;
};
NaturalityReport naturality_check(const ColeAlgebra& cole);

/// b = sum_k b_k xbar^k  ->  sum_k pi*(b_k) p^k as functions on the fiber space.
struct RhoStar {
  AlgebraHandle domain;
  CMatrix matrix;  // |space| x dim(B)
  bool image_in_algebra = false;

  CVector operator()(const Element& b) const;
};
RhoStar rho_star(const AlgebraHandle& b, const ColeAlgebra& cole, const Tolerances& tol = {});

// ---------------------------------------------------------------------------

/// Minimal boundary of the function space spanned by the columns of `values`
/// (points x functions, constants included): points are dropped while they
/// have a representing measure on the points that remain.
std::vector<std::size_t> silov_boundary(const CMatrix& values, const Tolerances& tol = {});
std::vector<std::size_t> silov_boundary(const AlgebraHandle& a, const Tolerances& tol = {});

/// Every column attains its maximum modulus on `subset` (relative 1e-12).
bool is_boundary(const CMatrix& values, const std::vector<std::size_t>& subset);
/// No point of `subset` has a representing measure on the others.
bool is_minimal_boundary(const CMatrix& values, const std::vector<std::size_t>& subset, const Tolerances& tol = {});

struct TopologicalZeroDivisor {
  double boundary_min = 0.0;  // min |d| over the boundary
  double element_norm = 0.0;
  double relative_threshold = 1e-6;
  double threshold = 0.0;     // relative_threshold * ||d||
  bool verdict = false;
};
TopologicalZeroDivisor is_topological_zero_divisor(const Element& d, const std::vector<std::size_t>& boundary,
                                                   double relative_threshold = 1e-6);

struct ExtensionComparison {
  Element discriminant;
  double discriminant_norm = 0.0;
  bool discriminant_zero = false;
  bool discriminant_zero_divisor = false;
  std::vector<std::size_t> boundary;
  TopologicalZeroDivisor topological;
  std::string verdict;  // "topologically isomorphic" | "not isomorphic" | "tractability already fails"
};
ExtensionComparison compare_extensions(const AlgebraHandle& a, const MonicPoly& alpha, const Tolerances& tol = {});

// ---------------------------------------------------------------------------

struct ColeTower {
  CMatrix base_functions;           // points x functions of the ground algebra
  std::vector<ColeAlgebra> stages;  // stages[k] sits over stage k (stage 0 = ground)

  std::size_t depth() const { return stages.size(); }
  std::size_t space_size(std::size_t stage) const;
  /// Basis of the algebra at `stage` (stage 0: the ground function span).
  CMatrix algebra_basis(std::size_t stage) const;
  /// Ground point followed by every root up to `stage`.
  std::vector<Complex> path(std::size_t stage, std::size_t point) const;
  /// pi_{from,to}: for each point of stage `to`, its image in stage `from`,
  /// by composing the one-step projections.
  std::vector<std::size_t> projection(std::size_t from, std::size_t to) const;
  /// The same map found by matching truncated paths.
  std::vector<std::size_t> projection_by_path(std::size_t from, std::size_t to) const;
  /// Root functions of the given stage's polynomials, as functions on that stage.
  const std::vector<CVector>& roots(std::size_t stage) const { return stages.at(stage - 1).root_functions; }
};

/// Builds the polynomials of the next stage from the tower so far. Coefficients
/// must lie in the current top algebra.
using StageGenerator = std::function<std::vector<SpacePoly>(const ColeTower&)>;

ColeTower cole_tower(const AlgebraHandle& a, const std::vector<StageGenerator>& stages, const Tolerances& tol = {});

struct ColeTowerReport {
  bool projections_surjective = true;
  bool projections_compatible = true;
  double max_root_residual = 0.0;     // stage-k polynomials at their roots on stage k
  double max_isometry_defect = 0.0;   // | ||pi* f|| - ||f|| | over random f
  std::size_t samples = 0;
};
ColeTowerReport check_cole_tower(const ColeTower& tower, std::size_t samples, std::mt19937_64& rng);

}  // namespace ahx
