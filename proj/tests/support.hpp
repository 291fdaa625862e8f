#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ahx/cole.hpp"
#include "ahx/extension.hpp"

namespace testing {

using namespace ahx;

inline Complex rand_c(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  return {scale * g(rng), scale * g(rng)};
}

inline Element rand_elem(const AlgebraHandle& a, std::mt19937_64& rng, double scale = 1.0) {
  CVector v(static_cast<Eigen::Index>(a->dim()));
  for (auto& c : v) c = rand_c(rng, scale);
  return Element(a, v);
}

/// Random PolyModel element of degree <= d.
inline Element rand_poly(const AlgebraHandle& a, std::mt19937_64& rng, int d) {
  std::vector<Complex> c;
  for (int k = 0; k <= d; ++k) c.push_back(rand_c(rng));
  return Element::from_values(a, c);
}

inline AlgebraHandle pointwise(std::size_t n) { return Algebra::pointwise(PointSet::abstract(n)); }

inline Element values(const AlgebraHandle& a, std::vector<Complex> v) { return Element::from_values(a, v); }

inline std::vector<Complex> circle(std::size_t n) {
  std::vector<Complex> z;
  for (std::size_t j = 0; j < n; ++j) z.push_back(std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n)));
  z[0] = 1.0;
  return z;
}

/// Disc model: n circle samples (z = 1 first) plus extra points.
inline AlgebraHandle disc(std::size_t n, int degree, std::vector<Complex> extra = {}) {
  auto z = circle(n);
  z.insert(z.end(), extra.begin(), extra.end());
  return Algebra::poly_model(PointSet::from_coords(z), degree);
}

inline Element zfun(const AlgebraHandle& a) { return Element::from_values(a, {0.0, 1.0}); }

inline MonicPoly monic(const AlgebraHandle& a, std::vector<Element> lower) { return MonicPoly(a, std::move(lower)); }

inline MonicPoly rand_monic(const AlgebraHandle& a, std::mt19937_64& rng, std::size_t degree) {
  std::vector<Element> lower;
  for (std::size_t k = 0; k < degree; ++k) lower.push_back(rand_elem(a, rng));
  return MonicPoly(a, lower);
}

inline double max_abs(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testing
