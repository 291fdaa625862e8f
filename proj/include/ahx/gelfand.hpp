#pragma once

// Characters (multiplicative linear functionals) of the finite models.
//
// A character is a base point of the ground algebra plus one adjoined root per
// extension layer: on A[x]/(alpha), (h, lambda) is a character exactly when
// h(alpha)(lambda) = 0. Its value row holds H(e) for every basis element e.

#include <optional>
#include <vector>

#include "ahx/algebra.hpp"

namespace ahx {

struct Character {
  std::size_t base_point = 0;
  std::vector<Complex> root_path;
  CRowVector values;

  Complex operator()(const Element& a) const;
};

/// Ground algebras: one evaluation per point. Extensions: every root of h(alpha)
/// over every base character h; repeated roots yield one character.
std::vector<Character> characters(const AlgebraHandle& a, const Tolerances& tol = {});

/// Roots of the scalar polynomial h(alpha) for a character h of ext's base.
std::vector<numerics::Root> layer_roots(const Character& h, const AlgebraHandle& ext, const Tolerances& tol = {});

/// The character (h, root) of ext. The root is not checked.
Character lift_character(const Character& h, const AlgebraHandle& ext, Complex root);

/// Rows are characters, columns are basis elements.
CMatrix gelfand_matrix(const std::vector<Character>& chars, std::size_t dim);

/// max_H |H(a)|
double spectral_radius(const Element& a, const Tolerances& tol = {});

/// (||a^(2^k)|| / ||a^(2^(k-1))||)^(1/2^(k-1)) after k = `doublings` squarings,
/// computed on a log scale.
/// Empty when the backend cannot form the powers (PolyModel degree overflow).
std::optional<double> spectral_radius_estimate(const Element& a, int doublings = 20);

// ---------------------------------------------------------------------------

/// A unital algebra homomorphism, stored as its matrix on canonical bases.
struct Homomorphism {
  AlgebraHandle domain;
  AlgebraHandle codomain;
  CMatrix matrix;

  Element operator()(const Element& a) const;

  static Homomorphism identity(const AlgebraHandle& a);
  /// The canonical embedding of ext's base into ext.
  static Homomorphism embedding(const AlgebraHandle& ext);
  /// Restriction C(X) -> C(S) for a pointwise algebra on a subset S of X,
  /// `subset[j]` being the index in X of the j-th point of S.
  static Homomorphism restriction(const AlgebraHandle& from, const AlgebraHandle& to,
                                  const std::vector<std::size_t>& subset);
  /// A character viewed as a homomorphism into the scalars.
  static Homomorphism from_character(const AlgebraHandle& domain, const Character& h);
};

/// g after f.
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

}  // namespace ahx
