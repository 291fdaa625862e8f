#include "ahx/gelfand.hpp"

#include <cmath>

namespace ahx {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::vector<Character> merge_duplicates(std::vector<Character> chars) {
  std::vector<Character> out;
  for (auto& c : chars) {
    bool duplicate = false;
    for (const auto& kept : out) {
      if ((kept.values - c.values).cwiseAbs().maxCoeff() <= kCharacterMergeTol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Complex Character::operator()(const Element& a) const {
  if (values.size() != a.coords().size()) throw Error(ErrorKind::DomainMismatch, "character of another algebra");
  return (values * a.coords())(0, 0);
}

std::vector<numerics::Root> layer_roots(const Character& h, const AlgebraHandle& ext, const Tolerances& tol) {
  std::vector<Complex> lower;
  for (const auto& a : ext->alpha()) lower.push_back(h(a));
  return numerics::complex_roots(lower, tol);
}

Character lift_character(const Character& h, const AlgebraHandle& ext, Complex root) {
  const std::size_t n = ext->degree();
  const std::size_t m = ext->base()->dim();
  Character out;
  out.base_point = h.base_point;
  out.root_path = h.root_path;
  out.root_path.push_back(root);
  out.values.resize(idx(n * m));
  Complex power{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    out.values.segment(idx(k * m), idx(m)) = h.values * power;
    power *= root;
  }
  return out;
}

std::vector<Character> characters(const AlgebraHandle& a, const Tolerances& tol) {
  std::vector<Character> out;
  switch (a->backend()) {
    case Backend::Pointwise:
      for (std::size_t i = 0; i < a->dim(); ++i) {
        Character c;
        c.base_point = i;
        c.values = CRowVector::Zero(idx(a->dim()));
        c.values[idx(i)] = 1.0;
        out.push_back(std::move(c));
      }
      return out;
    case Backend::PolyModel: {
      const CMatrix& v = a->norm_structure().front().functionals;
      for (std::size_t i = 0; i < a->points().size(); ++i) {
        Character c;
        c.base_point = i;
        c.values = v.row(idx(i));
        out.push_back(std::move(c));
      }
      return merge_duplicates(std::move(out));
    }
    case Backend::AHExtension:
      for (const auto& h : characters(a->base(), tol)) {
        for (const auto& r : layer_roots(h, a, tol)) out.push_back(lift_character(h, a, r.value));
      }
      return merge_duplicates(std::move(out));
  }
  return out;
}

CMatrix gelfand_matrix(const std::vector<Character>& chars, std::size_t dim) {
  CMatrix g(idx(chars.size()), idx(dim));
  for (std::size_t i = 0; i < chars.size(); ++i) g.row(idx(i)) = chars[i].values;
  return g;
}

double spectral_radius(const Element& a, const Tolerances& tol) {
  double r = 0.0;
  for (const auto& h : characters(a.owner(), tol)) r = std::max(r, std::abs(h(a)));
  return r;
}

std::optional<double> spectral_radius_estimate(const Element& a, int doublings) {
  // a^(2^k) = exp(log_scale) * unit with ||unit|| = 1. The last step uses the
  // ratio ||a^(2N)|| / ||a^N||, which cancels the constant in ||a^n|| ~ C r^n.
  const double n0 = norm(a);
  if (n0 == 0.0) return 0.0;
  double log_scale = std::log(n0);
  double prev = 0.0;
  Element unit = (1.0 / n0) * a;
  try {
    for (int k = 0; k < doublings; ++k) {
      const Element sq = unit * unit;
      const double ns = norm(sq);
      if (ns == 0.0) return 0.0;
      prev = log_scale;
      log_scale = 2.0 * log_scale + std::log(ns);
      unit = (1.0 / ns) * sq;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegreeOverflow) return std::nullopt;
    throw;
  }
  if (doublings <= 0) return n0;
  return std::exp((log_scale - prev) / std::ldexp(1.0, doublings - 1));
}

// ---------------------------------------------------------------------------

Element Homomorphism::operator()(const Element& a) const {
  if (a.owner() != domain) throw Error(ErrorKind::DomainMismatch, "element is not in the homomorphism's domain");
  return Element(codomain, matrix * a.coords());
}

Homomorphism Homomorphism::identity(const AlgebraHandle& a) {
  return Homomorphism{a, a, CMatrix::Identity(idx(a->dim()), idx(a->dim()))};
}

Homomorphism Homomorphism::embedding(const AlgebraHandle& ext) {
  if (ext->backend() != Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "not an extension");
  const auto m = idx(ext->base()->dim());
  CMatrix mat = CMatrix::Zero(idx(ext->dim()), m);
  mat.topRows(m) = CMatrix::Identity(m, m);
  return Homomorphism{ext->base(), ext, std::move(mat)};
}

Homomorphism Homomorphism::restriction(const AlgebraHandle& from, const AlgebraHandle& to,
                                       const std::vector<std::size_t>& subset) {
  if (from->backend() != Backend::Pointwise || to->backend() != Backend::Pointwise) {
    throw Error(ErrorKind::InvalidArgument, "restriction maps act between pointwise algebras");
  }
  if (subset.size() != to->dim()) throw Error(ErrorKind::InvalidArgument, "subset size does not match codomain");
  CMatrix mat = CMatrix::Zero(idx(to->dim()), idx(from->dim()));
  for (std::size_t j = 0; j < subset.size(); ++j) {
    if (subset[j] >= from->dim()) throw Error(ErrorKind::InvalidArgument, "subset index out of range");
    mat(idx(j), idx(subset[j])) = 1.0;
  }
  return Homomorphism{from, to, std::move(mat)};
}

Homomorphism Homomorphism::from_character(const AlgebraHandle& domain, const Character& h) {
  if (static_cast<std::size_t>(h.values.size()) != domain->dim()) {
    throw Error(ErrorKind::DomainMismatch, "character of another algebra");
  }
  return Homomorphism{domain, Algebra::scalars(), h.values};
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  if (f.codomain != g.domain) throw Error(ErrorKind::DomainMismatch, "homomorphisms do not compose");
  return Homomorphism{f.domain, g.codomain, g.matrix * f.matrix};
}

}  // namespace ahx
