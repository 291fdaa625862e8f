#include "ahx/poly.hpp"

#include "ahx/numerics.hpp"

namespace ahx {

namespace {

void trim(std::vector<Element>& c, double tol) {
  while (!c.empty() && c.back().is_zero(tol)) c.pop_back();
}

void require_owner(const Element& e, const AlgebraHandle& owner) {
  if (e.owner() != owner) throw Error(ErrorKind::OwnerMismatch, "coefficient belongs to another algebra");
}

}  // namespace

RingPoly::RingPoly(AlgebraHandle owner, std::vector<Element> coeffs)
    : owner_(std::move(owner)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) require_owner(c, owner_);
  trim(coeffs_, 0.0);
}

RingPoly RingPoly::monomial(const AlgebraHandle& owner, std::size_t k, const Element& c) {
  std::vector<Element> coeffs(k + 1, Element::zero(owner));
  coeffs[k] = c;
  return RingPoly(owner, std::move(coeffs));
}

Element RingPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Element::zero(owner_);
}

std::ptrdiff_t RingPoly::degree(double tol) const {
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (!coeffs_[k].is_zero(tol)) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

Element RingPoly::operator()(const Element& y) const {
  require_owner(y, owner_);
  Element acc = Element::zero(owner_);
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * y + coeffs_[k];
  return acc;
}

RingPoly operator+(const RingPoly& f, const RingPoly& g) {
  if (f.owner() != g.owner()) throw Error(ErrorKind::OwnerMismatch, "polynomials over different algebras");
  const std::size_t n = std::max(f.coeffs().size(), g.coeffs().size());
  std::vector<Element> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(f.coeff(k) + g.coeff(k));
  return RingPoly(f.owner(), std::move(out));
}

RingPoly operator-(const RingPoly& f, const RingPoly& g) {
  if (f.owner() != g.owner()) throw Error(ErrorKind::OwnerMismatch, "polynomials over different algebras");
  const std::size_t n = std::max(f.coeffs().size(), g.coeffs().size());
  std::vector<Element> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(f.coeff(k) - g.coeff(k));
  return RingPoly(f.owner(), std::move(out));
}

RingPoly operator*(const RingPoly& f, const RingPoly& g) {
  if (f.owner() != g.owner()) throw Error(ErrorKind::OwnerMismatch, "polynomials over different algebras");
  if (f.coeffs().empty() || g.coeffs().empty()) return RingPoly::zero(f.owner());
  std::vector<Element> out(f.coeffs().size() + g.coeffs().size() - 1, Element::zero(f.owner()));
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) out[i + j] = out[i + j] + f.coeffs()[i] * g.coeffs()[j];
  }
  return RingPoly(f.owner(), std::move(out));
}

bool approx_equal(const RingPoly& f, const RingPoly& g, double tol) {
  if (f.owner() != g.owner()) return false;
  const std::size_t n = std::max(f.coeffs().size(), g.coeffs().size());
  for (std::size_t k = 0; k < n; ++k) {
    if (!approx_equal(f.coeff(k), g.coeff(k), tol)) return false;
  }
  return true;
}

RingPoly derivative(const RingPoly& f) {
  std::vector<Element> out;
  for (std::size_t k = 1; k < f.coeffs().size(); ++k) out.push_back(static_cast<double>(k) * f.coeffs()[k]);
  return RingPoly(f.owner(), std::move(out));
}

MonicPoly::MonicPoly(AlgebraHandle owner, std::vector<Element> lower)
    : owner_(std::move(owner)), lower_(std::move(lower)) {
  if (lower_.empty()) throw Error(ErrorKind::DegenerateDegree, "monic polynomial must have degree >= 1");
  for (const auto& c : lower_) require_owner(c, owner_);
}

RingPoly MonicPoly::as_ring() const {
  std::vector<Element> c = lower_;
  c.push_back(Element::one(owner_));
  return RingPoly(owner_, std::move(c));
}

DivMod poly_divmod(const RingPoly& f, const MonicPoly& g) {
  if (f.owner() != g.owner()) throw Error(ErrorKind::OwnerMismatch, "dividend and divisor over different algebras");
  const auto& owner = f.owner();
  const std::size_t n = g.degree();
  std::vector<Element> rem = f.coeffs();
  if (rem.size() <= n) return DivMod{RingPoly::zero(owner), f};
  std::vector<Element> quot(rem.size() - n, Element::zero(owner));
  for (std::size_t k = rem.size(); k-- > n;) {
    const Element lead = rem[k];
    quot[k - n] = lead;
    for (std::size_t j = 0; j < n; ++j) rem[k - n + j] = rem[k - n + j] - lead * g.lower()[j];
    rem[k] = Element::zero(owner);
  }
  rem.resize(n, Element::zero(owner));
  return DivMod{RingPoly(owner, std::move(quot)), RingPoly(owner, std::move(rem))};
}

Element resultant(const RingPoly& f, const RingPoly& g) {
  if (f.owner() != g.owner()) throw Error(ErrorKind::OwnerMismatch, "polynomials over different algebras");
  const auto& owner = f.owner();
  const std::ptrdiff_t n = f.degree();
  const std::ptrdiff_t m = g.degree();
  if (n <= 0 || m <= 0) throw Error(ErrorKind::DegenerateDegree, "resultant needs two non-constant polynomials");
  const auto size = static_cast<std::size_t>(n + m);
  const Element zero = Element::zero(owner);
  std::vector<std::vector<Element>> mat(size, std::vector<Element>(size, zero));
  for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r) {
    for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) mat[r][r + j] = f.coeff(static_cast<std::size_t>(n) - j);
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
    for (std::size_t j = 0; j <= static_cast<std::size_t>(m); ++j) {
      mat[static_cast<std::size_t>(m) + r][r + j] = g.coeff(static_cast<std::size_t>(m) - j);
    }
  }
  return numerics::ring_determinant(mat, zero, Element::one(owner));
}

Element discriminant(const MonicPoly& f) {
  if (f.degree() < 2) throw Error(ErrorKind::DegenerateDegree, "discriminant needs degree >= 2");
  return resultant(f.as_ring(), derivative(f.as_ring()));
}

std::vector<Element> power_sums(const MonicPoly& f) {
  const std::size_t n = f.degree();
  const auto& a = f.lower();
  std::vector<Element> q;
  q.push_back(static_cast<double>(n) * Element::one(f.owner()));
  for (std::size_t k = 1; k < n; ++k) {
    Element acc = static_cast<double>(k) * a[n - k];
    for (std::size_t i = 1; i < k; ++i) acc = acc + a[n - i] * q[k - i];
    q.push_back(-acc);
  }
  return q;
}

RingPoly map_coeffs(const RingPoly& f, const Homomorphism& phi) {
  if (f.owner() != phi.domain) throw Error(ErrorKind::DomainMismatch, "polynomial is not over the map's domain");
  std::vector<Element> out;
  for (const auto& c : f.coeffs()) out.push_back(phi(c));
  return RingPoly(phi.codomain, std::move(out));
}

MonicPoly map_coeffs(const MonicPoly& f, const Homomorphism& phi) {
  if (f.owner() != phi.domain) throw Error(ErrorKind::DomainMismatch, "polynomial is not over the map's domain");
  std::vector<Element> out;
  for (const auto& c : f.lower()) out.push_back(phi(c));
  return MonicPoly(phi.codomain, std::move(out));
}

std::vector<Complex> scalar_lower(const MonicPoly& f, const Character& h) {
  std::vector<Complex> out;
  for (const auto& c : f.lower()) out.push_back(h(c));
  return out;
}

}  // namespace ahx
