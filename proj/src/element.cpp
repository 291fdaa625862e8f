#include <cmath>

#include "ahx/algebra.hpp"

namespace ahx {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Highest index with a coefficient above the element tolerance, or -1.
std::ptrdiff_t poly_degree(const CVector& c) {
  for (Eigen::Index k = c.size(); k-- > 0;) {
    if (std::abs(c[k]) > kElementTol) return k;
  }
  return -1;
}

Element ah_multiply(const Element& a, const Element& b) {
  const auto& ext = a.owner();
  const auto& base = ext->base();
  const std::size_t n = ext->degree();
  std::vector<Element> prod(2 * n - 1, Element::zero(base));
  const auto ac = a.coefficients();
  const auto bc = b.coefficients();
  for (std::size_t i = 0; i < n; ++i) {
    if (ac[i].is_zero(0.0)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (bc[j].is_zero(0.0)) continue;
      prod[i + j] = prod[i + j] + ac[i] * bc[j];
    }
  }
  return Element::from_coefficients(ext, prod);
}

}  // namespace

Element::Element(AlgebraHandle owner, CVector coords) : owner_(std::move(owner)), coords_(std::move(coords)) {
  if (!owner_) throw Error(ErrorKind::InvalidArgument, "element without an owner algebra");
  if (static_cast<std::size_t>(coords_.size()) != owner_->dim()) {
    throw Error(ErrorKind::InvalidArgument, "coordinate vector has length " + std::to_string(coords_.size()) +
                                                ", algebra dimension is " + std::to_string(owner_->dim()));
  }
  for (Eigen::Index i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i].real()) || !std::isfinite(coords_[i].imag())) {
      throw Error(ErrorKind::InvalidArgument, "non-finite element coordinate");
    }
  }
}

Element Element::zero(const AlgebraHandle& a) { return Element(a, CVector::Zero(idx(a->dim()))); }

Element Element::one(const AlgebraHandle& a) { return constant(a, Complex{1.0, 0.0}); }

Element Element::basis(const AlgebraHandle& a, std::size_t i) {
  if (i >= a->dim()) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  CVector v = CVector::Zero(idx(a->dim()));
  v[idx(i)] = 1.0;
  return Element(a, std::move(v));
}

Element Element::constant(const AlgebraHandle& a, Complex c) {
  switch (a->backend()) {
    case Backend::Pointwise: return Element(a, CVector::Constant(idx(a->dim()), c));
    case Backend::PolyModel: {
      CVector v = CVector::Zero(idx(a->dim()));
      v[0] = c;
      return Element(a, std::move(v));
    }
    case Backend::AHExtension: return embed(a, constant(a->base(), c));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown backend");
}

Element Element::from_values(const AlgebraHandle& a, const std::vector<Complex>& v) {
  if (a->backend() == Backend::AHExtension) {
    throw Error(ErrorKind::InvalidArgument, "from_values does not apply to extensions");
  }
  if (v.size() > a->dim()) throw Error(ErrorKind::InvalidArgument, "too many values for the algebra");
  if (a->backend() == Backend::Pointwise && v.size() != a->dim()) {
    throw Error(ErrorKind::InvalidArgument, "pointwise element needs one value per point");
  }
  CVector c = CVector::Zero(idx(a->dim()));
  for (std::size_t i = 0; i < v.size(); ++i) c[idx(i)] = v[i];
  return Element(a, std::move(c));
}

Element Element::from_coefficients(const AlgebraHandle& ext, const std::vector<Element>& coeffs) {
  if (ext->backend() != Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "not an extension");
  const auto& base = ext->base();
  const auto& alpha = ext->alpha();
  const std::size_t n = alpha.size();
  for (const auto& c : coeffs) {
    if (c.owner() != base) throw Error(ErrorKind::OwnerMismatch, "coefficient not in the base algebra");
  }
  std::vector<Element> work = coeffs;
  // Reduce modulo the monic alpha from the top down: x^k = -sum_j a_j x^{k-n+j}.
  for (std::size_t k = work.size(); k-- > n;) {
    if (work[k].is_zero(0.0)) continue;
    const Element lead = work[k];
    for (std::size_t j = 0; j < n; ++j) work[k - n + j] = work[k - n + j] - lead * alpha[j];
    work[k] = Element::zero(base);
  }
  const std::size_t m = base->dim();
  CVector v = CVector::Zero(idx(n * m));
  for (std::size_t k = 0; k < std::min(n, work.size()); ++k) v.segment(idx(k * m), idx(m)) = work[k].coords();
  return Element(ext, std::move(v));
}

Element Element::coefficient(std::size_t k) const {
  if (owner_->backend() != Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "not an extension element");
  if (k >= owner_->degree()) return Element::zero(owner_->base());
  const std::size_t m = owner_->base()->dim();
  return Element(owner_->base(), coords_.segment(idx(k * m), idx(m)));
}

std::vector<Element> Element::coefficients() const {
  std::vector<Element> out;
  for (std::size_t k = 0; k < owner_->degree(); ++k) out.push_back(coefficient(k));
  return out;
}

bool Element::is_zero(double tol) const {
  return coords_.size() == 0 || coords_.cwiseAbs().maxCoeff() <= tol;
}

CVector Element::point_values() const {
  switch (owner_->backend()) {
    case Backend::Pointwise: return coords_;
    case Backend::PolyModel: return owner_->norm_structure().front().functionals * coords_;
    case Backend::AHExtension: break;
  }
  throw Error(ErrorKind::InvalidArgument, "extension elements are not functions on the point set");
}

void require_same_owner(const Element& a, const Element& b) {
  if (a.owner() != b.owner()) throw Error(ErrorKind::OwnerMismatch, "elements belong to different algebras");
}

Element operator+(const Element& a, const Element& b) {
  require_same_owner(a, b);
  return Element(a.owner(), a.coords() + b.coords());
}

Element operator-(const Element& a, const Element& b) {
  require_same_owner(a, b);
  return Element(a.owner(), a.coords() - b.coords());
}

Element operator-(const Element& a) { return Element(a.owner(), -a.coords()); }

Element operator*(Complex s, const Element& a) { return Element(a.owner(), s * a.coords()); }

Element operator*(const Element& a, const Element& b) {
  require_same_owner(a, b);
  const auto& owner = a.owner();
  switch (owner->backend()) {
    case Backend::Pointwise: return Element(owner, a.coords().cwiseProduct(b.coords()));
    case Backend::PolyModel: {
      const auto da = poly_degree(a.coords());
      const auto db = poly_degree(b.coords());
      if (da < 0 || db < 0) return Element::zero(owner);
      if (da + db > owner->degree_bound()) {
        throw Error(ErrorKind::DegreeOverflow, "product degree " + std::to_string(da + db) + " exceeds bound " +
                                                   std::to_string(owner->degree_bound()));
      }
      CVector c = CVector::Zero(a.coords().size());
      for (Eigen::Index i = 0; i <= da; ++i) {
        for (Eigen::Index j = 0; j <= db; ++j) c[i + j] += a.coords()[i] * b.coords()[j];
      }
      return Element(owner, std::move(c));
    }
    case Backend::AHExtension: return ah_multiply(a, b);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown backend");
}

Element pow(const Element& a, unsigned k) {
  Element result = Element::one(a.owner());
  Element base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

bool approx_equal(const Element& a, const Element& b, double tol) {
  if (a.owner() != b.owner()) return false;
  return (a.coords() - b.coords()).cwiseAbs().maxCoeff() <= tol;
}

double norm(const Element& a) { return numerics::evaluate_norm(a.owner()->norm_structure(), a.coords()); }

CMatrix mult_operator(const Element& a) {
  const auto& owner = a.owner();
  const auto n = idx(owner->dim());
  switch (owner->backend()) {
    case Backend::Pointwise: return a.coords().asDiagonal();
    case Backend::PolyModel: {
      const Eigen::Index d = owner->degree_bound();
      CMatrix m = CMatrix::Zero(2 * d + 1, n);
      for (Eigen::Index j = 0; j < n; ++j) m.col(j).segment(j, n) = a.coords();
      return m;
    }
    case Backend::AHExtension: {
      CMatrix m(n, n);
      for (Eigen::Index j = 0; j < n; ++j) m.col(j) = (a * Element::basis(owner, static_cast<std::size_t>(j))).coords();
      return m;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown backend");
}

bool is_zero_divisor(const Element& a, const Tolerances& tol) {
  if (a.is_zero()) return false;
  switch (a.owner()->backend()) {
    case Backend::Pointwise: return a.coords().cwiseAbs().minCoeff() <= kElementTol;
    case Backend::PolyModel: return false;  // C[z] is an integral domain
    case Backend::AHExtension: return numerics::numerical_rank(mult_operator(a), tol) < a.owner()->dim();
  }
  return false;
}

Element embed(const AlgebraHandle& ext, const Element& a) {
  if (ext->backend() != Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "not an extension");
  if (a.owner() != ext->base()) throw Error(ErrorKind::OwnerMismatch, "element is not in the base algebra");
  CVector v = CVector::Zero(idx(ext->dim()));
  v.head(a.coords().size()) = a.coords();
  return Element(ext, std::move(v));
}

Element generator(const AlgebraHandle& ext) {
  if (ext->backend() != Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "not an extension");
  if (ext->degree() == 1) {
    // x = -a_0 when alpha has degree 1
    return embed(ext, -ext->alpha()[0]);
  }
  return Element::from_coefficients(ext, {Element::zero(ext->base()), Element::one(ext->base())});
}

}  // namespace ahx
