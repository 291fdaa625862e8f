#pragma once

// Polynomials with coefficients in an algebra.
//
// The discriminant uses the determinant layout of the Sylvester matrix of f
// and f', scaled so that for a quadratic x^2 + bx + c it equals 4c - b^2.
// This is the negative of the classical b^2 - 4c; zero and zero-divisor
// questions are unaffected by the sign.

#include <vector>

#include "ahx/algebra.hpp"
#include "ahx/gelfand.hpp"

namespace ahx {

class RingPoly {
 public:
  RingPoly(AlgebraHandle owner, std::vector<Element> coeffs);

  static RingPoly zero(const AlgebraHandle& owner) { return RingPoly(owner, {}); }
  static RingPoly monomial(const AlgebraHandle& owner, std::size_t k, const Element& c);

  const AlgebraHandle& owner() const { return owner_; }
  /// Lowest degree first; exact zero leading coefficients are trimmed.
  const std::vector<Element>& coeffs() const { return coeffs_; }
  Element coeff(std::size_t k) const;

  /// -1 for the zero polynomial. Leading coefficients within `tol` are ignored.
  std::ptrdiff_t degree(double tol = 0.0) const;

  /// Value at y, an element of the owner algebra (Horner).
  Element operator()(const Element& y) const;

 private:
  AlgebraHandle owner_;
  std::vector<Element> coeffs_;
};

RingPoly operator+(const RingPoly& f, const RingPoly& g);
RingPoly operator-(const RingPoly& f, const RingPoly& g);
RingPoly operator*(const RingPoly& f, const RingPoly& g);
bool approx_equal(const RingPoly& f, const RingPoly& g, double tol = kElementTol);

RingPoly derivative(const RingPoly& f);

/// a_0 + a_1 x + ... + a_{n-1} x^{n-1} + x^n
class MonicPoly {
 public:
  MonicPoly(AlgebraHandle owner, std::vector<Element> lower);

  const AlgebraHandle& owner() const { return owner_; }
  const std::vector<Element>& lower() const { return lower_; }
  std::size_t degree() const { return lower_.size(); }

  RingPoly as_ring() const;
  Element operator()(const Element& y) const { return as_ring()(y); }

 private:
  AlgebraHandle owner_;
  std::vector<Element> lower_;
};

struct DivMod {
  RingPoly quotient;
  RingPoly remainder;
};

/// f = q g + r with deg r < deg g.
DivMod poly_divmod(const RingPoly& f, const MonicPoly& g);

/// Determinant of the (n+m)-square Sylvester matrix: m shifted rows of f's
/// coefficients followed by n shifted rows of g's, highest degree first.
Element resultant(const RingPoly& f, const RingPoly& g);

/// resultant(f, f') for monic f of degree >= 2.
Element discriminant(const MonicPoly& f);

/// Power sums q_0..q_{n-1} of the roots, by Newton's identities.
std::vector<Element> power_sums(const MonicPoly& f);

RingPoly map_coeffs(const RingPoly& f, const Homomorphism& phi);
MonicPoly map_coeffs(const MonicPoly& f, const Homomorphism& phi);

/// The scalar polynomial h(f) as lower coefficients, for a character h.
std::vector<Complex> scalar_lower(const MonicPoly& f, const Character& h);

}  // namespace ahx
