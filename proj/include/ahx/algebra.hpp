#pragma once

// Finite-dimensional commutative unital normed algebras over C.
//
// Three backends share one element representation (a coordinate vector in a
// canonical basis):
//   Pointwise    C(X) for a finite X, basis = point indicators, sup norm.
//   PolyModel    polynomials of degree <= D in the coordinate z, sup norm over
//                the sample points. Products of degree > D raise DegreeOverflow.
//   AHExtension  A[x]/(alpha) with reduced representatives sum_k b_k xbar^k;
//                coordinate k*dim(A) + i is e_i xbar^k; norm sum_k ||b_k|| t^k.
//
// Tractability and semisimplicity coincide on these models (every maximal
// ideal of a finite-dimensional algebra is closed), so a single verdict is
// reported for both.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ahx/numerics.hpp"
#include "ahx/types.hpp"

namespace ahx {

struct PointSet {
  std::vector<std::string> labels;
  std::vector<std::optional<Complex>> coords;

  std::size_t size() const { return labels.size(); }
  bool has_coords() const;
  Complex coord(std::size_t i) const;

  /// Labelled points p0, p1, ... at the given coordinates.
  static PointSet from_coords(const std::vector<Complex>& zs);
  /// Labelled points p0..p{n-1} without coordinates.
  static PointSet abstract(std::size_t n);

  void validate() const;
};

enum class Backend { Pointwise, PolyModel, AHExtension };

const char* to_string(Backend b);

class Algebra;
class Element;
using AlgebraHandle = std::shared_ptr<const Algebra>;

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static AlgebraHandle pointwise(PointSet points);
  static AlgebraHandle poly_model(PointSet points, int degree_bound);
  /// A[x]/(alpha) with parameter t. The parameter condition is checked by
  /// ah_extend; this factory only checks shapes.
  static AlgebraHandle extension(const AlgebraHandle& base, std::vector<Element> alpha_lower, double t);
  /// The one-point algebra C, shared by every character.
  static AlgebraHandle scalars();

  Backend backend() const { return backend_; }
  std::size_t dim() const { return dim_; }

  /// Point set of the ground (non-extension) algebra at the bottom of the chain.
  const PointSet& points() const;
  int degree_bound() const { return degree_bound_; }

  // AHExtension data
  const AlgebraHandle& base() const { return base_; }
  const std::vector<Element>& alpha() const;
  std::size_t degree() const;
  double t() const { return t_; }

  /// Number of extension layers above the ground algebra.
  std::size_t depth() const;
  AlgebraHandle ground() const;

  const numerics::NormStructure& norm_structure() const { return norm_; }

  std::string describe() const;

 private:
  Algebra() = default;

  Backend backend_ = Backend::Pointwise;
  std::size_t dim_ = 0;
  PointSet points_;
  int degree_bound_ = -1;
  AlgebraHandle base_;
  std::shared_ptr<const std::vector<Element>> alpha_;
  double t_ = 0.0;
  numerics::NormStructure norm_;
};

class Element {
 public:
  Element(AlgebraHandle owner, CVector coords);

  static Element zero(const AlgebraHandle& a);
  static Element one(const AlgebraHandle& a);
  static Element basis(const AlgebraHandle& a, std::size_t i);
  static Element constant(const AlgebraHandle& a, Complex c);

  /// Pointwise: values per point. PolyModel: coefficients in z (may be shorter
  /// than D+1).
  static Element from_values(const AlgebraHandle& a, const std::vector<Complex>& v);

  /// AHExtension from a coefficient sequence sum_k c_k xbar^k; sequences
  /// longer than deg(alpha) are reduced modulo alpha.
  static Element from_coefficients(const AlgebraHandle& ext, const std::vector<Element>& coeffs);

  const AlgebraHandle& owner() const { return owner_; }
  const CVector& coords() const { return coords_; }

  /// Coefficient of xbar^k (AHExtension only).
  Element coefficient(std::size_t k) const;
  std::vector<Element> coefficients() const;

  bool is_zero(double tol = kElementTol) const;

  /// Values of the represented function on the ground point set (Pointwise and
  /// PolyModel only).
  CVector point_values() const;

 private:
  AlgebraHandle owner_;
  CVector coords_;
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Element& a, const Element& b);
Element operator*(Complex s, const Element& a);
inline Element operator*(double s, const Element& a) { return Complex(s, 0.0) * a; }

Element pow(const Element& a, unsigned k);

bool approx_equal(const Element& a, const Element& b, double tol = kElementTol);

double norm(const Element& a);

/// Matrix of b -> ab. For PolyModel this is the (2D+1) x (D+1) map into
/// polynomials of degree <= 2D.
CMatrix mult_operator(const Element& a);

/// a != 0 and ab = 0 for some b != 0. A nonzero polynomial is never a zero
/// divisor in the PolyModel backend.
bool is_zero_divisor(const Element& a, const Tolerances& tol = {});

/// a -> (a, 0, ..., 0) into an extension of a's owner.
Element embed(const AlgebraHandle& ext, const Element& a);
/// The class of x in A[x]/(alpha).
Element generator(const AlgebraHandle& ext);

void require_same_owner(const Element& a, const Element& b);

}  // namespace ahx
