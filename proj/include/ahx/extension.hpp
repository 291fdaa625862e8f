#pragma once

// Arens-Hoffman extensions B = A[x]/(alpha) and finite towers of them.
//
// Norm on B: ||sum_k b_k xbar^k|| = sum_k ||b_k|| t^k over the reduced
// representative, valid whenever t^n >= sum_k ||a_k|| t^k. This is already
// the quotient norm, so no infimum is taken.

#include <optional>
#include <string>
#include <vector>

#include "ahx/algebra.hpp"
#include "ahx/gelfand.hpp"
#include "ahx/numerics.hpp"
#include "ahx/poly.hpp"

namespace ahx {

struct NormParameter {
  double t = 1.0;
  bool minimal = false;
};

/// Smallest t with t^n >= sum_k ||a_k|| t^k (bisection, 1e-12 relative);
/// t = 1 when every coefficient vanishes.
NormParameter min_norm_parameter(const MonicPoly& alpha);

/// max(minimal t, ||q_k||^(1/k) for k = 1..n-1) with q_k the power sums.
/// The k = 0 condition (1 >= ||q_0|| = n) can never hold and is skipped.
NormParameter power_sum_parameter(const MonicPoly& alpha);

/// t^n >= sum_k ||a_k|| t^k, up to a relative slack of 1e-12.
bool satisfies_parameter_condition(const MonicPoly& alpha, double t);

/// A[x]/(alpha). Uses the minimal parameter unless one is given; a supplied
/// parameter that violates the condition raises InvalidParameter.
AlgebraHandle ah_extend(const AlgebraHandle& base, const MonicPoly& alpha, std::optional<NormParameter> t = {});

/// alpha as a monic polynomial over ext's base.
MonicPoly defining_polynomial(const AlgebraHandle& ext);

/// K1 ||b||_2 <= ||b||_1 <= K2 ||b||_2 for parameters t1 <= t2.
struct EquivalenceConstants {
  double lower = 1.0;  // K1
  double upper = 1.0;  // K2
};
EquivalenceConstants norm_equivalence_constants(const MonicPoly& alpha, NormParameter t1, NormParameter t2);

/// Basis of the intersection of the kernels of all characters.
std::vector<Element> radical(const AlgebraHandle& a, const Tolerances& tol = {});
bool is_tractable(const AlgebraHandle& a, const Tolerances& tol = {});

// ---------------------------------------------------------------------------

enum class Forecast { Tractable, NotTractable, Unknown };
const char* to_string(Forecast f);

struct TractabilityForecast {
  Element discriminant;
  double discriminant_norm = 0.0;
  bool discriminant_zero = false;
  bool discriminant_zero_divisor = false;
  bool base_tractable = false;
  bool binomial = false;          // alpha = x^n + a_0
  bool constant_term_degenerate = false;  // a_0 zero or a zero divisor
  Forecast prediction = Forecast::Unknown;
  std::string rule;
};

/// Predicts tractability of A[x]/(alpha) from the discriminant alone:
/// tractable when A is and d is neither zero nor a zero divisor; not tractable
/// for x^n + a_0 over tractable A with a_0 zero or a zero divisor.
TractabilityForecast tractability_forecast(const AlgebraHandle& base, const MonicPoly& alpha,
                                           const Tolerances& tol = {});

// ---------------------------------------------------------------------------

/// B / rad(B), realized on the orthogonal complement of the radical with the
/// quotient norm inf_{k in rad} ||b + k||.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(AlgebraHandle parent, const Tolerances& tol = {});

  const AlgebraHandle& parent() const { return parent_; }
  std::size_t dim() const { return static_cast<std::size_t>(complement_.cols()); }
  const std::vector<Element>& radical() const { return radical_; }
  bool is_identity() const { return radical_.empty(); }

  /// The quotient map: coordinates of the class of b.
  CVector project(const Element& b) const;
  /// The representative of a class inside the complement.
  Element lift(const CVector& c) const;
  CVector multiply(const CVector& a, const CVector& b) const;
  CVector one() const;

  numerics::AffineMinResult norm_detail(const CVector& c) const;
  double norm(const CVector& c) const { return norm_detail(c).value; }

  CMatrix gelfand_matrix() const;
  bool is_tractable() const;

 private:
  AlgebraHandle parent_;
  Tolerances tol_;
  std::vector<Element> radical_;
  CMatrix radical_basis_;  // columns
  CMatrix complement_;     // orthonormal columns
};

// ---------------------------------------------------------------------------

/// The unique homomorphism B1 -> B2 with phi(xbar) = y and phi o nu' = theta o phi0,
/// where B1 = A1[x]/(alpha1), phi0: A1 -> A2, theta: A2 -> B2. Raises NotARoot
/// when theta(phi0(alpha1))(y) is not zero.
Homomorphism universal_map(const Homomorphism& phi0, const Homomorphism& theta, const AlgebraHandle& b1,
                           const Element& y, const Tolerances& tol = {});

// ---------------------------------------------------------------------------

struct Tower {
  AlgebraHandle ground;
  std::vector<MonicPoly> polys;          // as supplied
  std::vector<AlgebraHandle> layers;     // layers[0] = ground, layers[k] after k polynomials
  std::vector<Homomorphism> steps;       // layers[k] -> layers[k+1]

  const AlgebraHandle& top() const { return layers.back(); }
  /// Composite embedding layers[from] -> layers[to], from <= to.
  Homomorphism embedding(std::size_t from, std::size_t to) const;
  /// Index of the layer a character belongs to.
  std::size_t layer_of(const Character& h) const;
};

struct TowerOptions {
  /// Per-polynomial parameter overrides; missing entries use the minimal t.
  std::vector<std::optional<NormParameter>> parameters;
  /// Accept polynomials over intermediate layers (the k-th over layers[k], or
  /// over an identically built copy of it).
  bool allow_layer_coefficients = false;
};

/// Adjoins the roots of `polys` one at a time, left to right. Coefficients
/// must lie in the ground algebra and are carried up by the layer embeddings.
Tower standard_extend(const AlgebraHandle& ground, const std::vector<MonicPoly>& polys,
                      const TowerOptions& options = {});

/// Rebuilds the character of `layer` with the given ground point and roots,
/// checking each root against its layer polynomial.
Character character_from_path(const AlgebraHandle& layer, std::size_t base_point,
                              const std::vector<Complex>& root_path, const Tolerances& tol = {});

/// H restricted to layers[target]: the root path truncated.
Character restrict_character(const Tower& tower, const Character& h, std::size_t target,
                             const Tolerances& tol = {});

/// A character of the top layer restricting to h: each missing root is the
/// first root in (real, imag) order.
Character extend_character(const Tower& tower, const Character& h, const Tolerances& tol = {});

}  // namespace ahx
