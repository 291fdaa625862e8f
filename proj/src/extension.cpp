#include "ahx/extension.hpp"

#include <cmath>

namespace ahx {

namespace {

std::vector<double> coefficient_norms(const MonicPoly& alpha) {
  std::vector<double> out;
  for (const auto& a : alpha.lower()) out.push_back(norm(a));
  return out;
}

// t^n - sum_k c_k t^k
double parameter_gap(const std::vector<double>& c, double t) {
  double lhs = std::pow(t, static_cast<double>(c.size()));
  double rhs = 0.0;
  double tk = 1.0;
  for (double ck : c) {
    rhs += ck * tk;
    tk *= t;
  }
  return lhs - rhs;
}

}  // namespace

NormParameter min_norm_parameter(const MonicPoly& alpha) {
  const auto c = coefficient_norms(alpha);
  double total = 0.0;
  for (double ck : c) total += ck;
  if (total == 0.0) return NormParameter{1.0, true};
  // One sign change in t^n - sum c_k t^k, so a single positive crossing,
  // and it lies below max(1, sum c_k).
  double lo = 0.0;
  double hi = std::max(1.0, total);
  for (int i = 0; i < 400 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (parameter_gap(c, mid) >= 0.0) hi = mid;
    else lo = mid;
  }
  return NormParameter{hi, true};
}

NormParameter power_sum_parameter(const MonicPoly& alpha) {
  double t = min_norm_parameter(alpha).t;
  const auto q = power_sums(alpha);
  for (std::size_t k = 1; k < q.size(); ++k) {
    t = std::max(t, std::pow(norm(q[k]), 1.0 / static_cast<double>(k)));
  }
  return NormParameter{t, false};
}

bool satisfies_parameter_condition(const MonicPoly& alpha, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) return false;
  const auto c = coefficient_norms(alpha);
  const double lhs = std::pow(t, static_cast<double>(c.size()));
  return parameter_gap(c, t) >= -1e-12 * std::max(1.0, lhs);
}

AlgebraHandle ah_extend(const AlgebraHandle& base, const MonicPoly& alpha, std::optional<NormParameter> t) {
  if (alpha.owner() != base) throw Error(ErrorKind::OwnerMismatch, "polynomial is not over the base algebra");
  const NormParameter param = t ? *t : min_norm_parameter(alpha);
  if (!satisfies_parameter_condition(alpha, param.t)) {
    throw Error(ErrorKind::InvalidParameter,
                "t = " + std::to_string(param.t) + " violates t^n >= sum ||a_k|| t^k");
  }
  return Algebra::extension(base, alpha.lower(), param.t);
}

MonicPoly defining_polynomial(const AlgebraHandle& ext) {
  if (ext->backend() != Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "not an extension");
  return MonicPoly(ext->base(), ext->alpha());
}

EquivalenceConstants norm_equivalence_constants(const MonicPoly& alpha, NormParameter t1, NormParameter t2) {
  if (t1.t > t2.t) throw Error(ErrorKind::ParameterOrder, "norm_equivalence_constants needs t1 <= t2");
  if (!satisfies_parameter_condition(alpha, t1.t) || !satisfies_parameter_condition(alpha, t2.t)) {
    throw Error(ErrorKind::InvalidParameter, "parameter violates t^n >= sum ||a_k|| t^k");
  }
  const double r = t1.t / t2.t;
  double k1 = 1.0;
  double rk = 1.0;
  for (std::size_t k = 1; k < alpha.degree(); ++k) {
    rk *= r;
    k1 = std::min(k1, rk);
  }
  return EquivalenceConstants{k1, 1.0};
}

std::vector<Element> radical(const AlgebraHandle& a, const Tolerances& tol) {
  const CMatrix g = gelfand_matrix(characters(a, tol), a->dim());
  const CMatrix kernel = numerics::null_space(g, tol);
  std::vector<Element> out;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) out.emplace_back(a, kernel.col(j));
  return out;
}

bool is_tractable(const AlgebraHandle& a, const Tolerances& tol) { return radical(a, tol).empty(); }

// ---------------------------------------------------------------------------

const char* to_string(Forecast f) {
  switch (f) {
    case Forecast::Tractable: return "tractable";
    case Forecast::NotTractable: return "not tractable";
    case Forecast::Unknown: return "unknown";
  }
  return "unknown";
}

TractabilityForecast tractability_forecast(const AlgebraHandle& base, const MonicPoly& alpha,
                                           const Tolerances& tol) {
  if (alpha.owner() != base) throw Error(ErrorKind::OwnerMismatch, "polynomial is not over the base algebra");
  TractabilityForecast f{discriminant(alpha), 0.0, false, false, false, false, false, Forecast::Unknown, {}};
  f.discriminant_norm = norm(f.discriminant);
  f.discriminant_zero = f.discriminant.is_zero();
  f.discriminant_zero_divisor = is_zero_divisor(f.discriminant, tol);
  f.base_tractable = is_tractable(base, tol);
  f.binomial = true;
  for (std::size_t k = 1; k < alpha.degree(); ++k) f.binomial = f.binomial && alpha.lower()[k].is_zero(0.0);
  if (f.binomial) {
    const auto& a0 = alpha.lower()[0];
    f.constant_term_degenerate = a0.is_zero() || is_zero_divisor(a0, tol);
  }
  if (f.base_tractable && !f.discriminant_zero && !f.discriminant_zero_divisor) {
    f.prediction = Forecast::Tractable;
    f.rule = "base tractable and discriminant neither zero nor a zero divisor";
  } else if (f.base_tractable && f.binomial && f.constant_term_degenerate) {
    f.prediction = Forecast::NotTractable;
    f.rule = "x^n + a0 over a tractable base with a0 zero or a zero divisor";
  } else {
    f.prediction = Forecast::Unknown;
    f.rule = f.base_tractable ? "discriminant is zero or a zero divisor and alpha is not binomial"
                              : "base algebra is not tractable";
  }
  return f;
}

// ---------------------------------------------------------------------------

QuotientAlgebra::QuotientAlgebra(AlgebraHandle parent, const Tolerances& tol)
    : parent_(std::move(parent)), tol_(tol), radical_(ahx::radical(parent_, tol)) {
  const auto n = static_cast<Eigen::Index>(parent_->dim());
  radical_basis_.resize(n, static_cast<Eigen::Index>(radical_.size()));
  for (std::size_t j = 0; j < radical_.size(); ++j) radical_basis_.col(static_cast<Eigen::Index>(j)) = radical_[j].coords();
  if (radical_.empty()) {
    complement_ = CMatrix::Identity(n, n);
  } else {
    complement_ = numerics::null_space(radical_basis_.adjoint(), tol);
  }
}

CVector QuotientAlgebra::project(const Element& b) const {
  if (b.owner() != parent_) throw Error(ErrorKind::OwnerMismatch, "element is not in the parent algebra");
  return complement_.adjoint() * b.coords();
}

Element QuotientAlgebra::lift(const CVector& c) const {
  if (c.size() != complement_.cols()) throw Error(ErrorKind::InvalidArgument, "quotient coordinates have wrong length");
  return Element(parent_, complement_ * c);
}

CVector QuotientAlgebra::multiply(const CVector& a, const CVector& b) const { return project(lift(a) * lift(b)); }

CVector QuotientAlgebra::one() const { return project(Element::one(parent_)); }

numerics::AffineMinResult QuotientAlgebra::norm_detail(const CVector& c) const {
  return numerics::affine_min_norm(parent_->norm_structure(), lift(c).coords(), radical_basis_, tol_);
}

CMatrix QuotientAlgebra::gelfand_matrix() const {
  return ahx::gelfand_matrix(characters(parent_, tol_), parent_->dim()) * complement_;
}

bool QuotientAlgebra::is_tractable() const { return numerics::null_space(gelfand_matrix(), tol_).cols() == 0; }

// ---------------------------------------------------------------------------

Homomorphism universal_map(const Homomorphism& phi0, const Homomorphism& theta, const AlgebraHandle& b1,
                           const Element& y, const Tolerances& tol) {
  if (b1->backend() != Backend::AHExtension || b1->base() != phi0.domain) {
    throw Error(ErrorKind::DomainMismatch, "B1 must extend the domain of phi0");
  }
  if (theta.domain != phi0.codomain) throw Error(ErrorKind::DomainMismatch, "theta must start where phi0 ends");
  if (y.owner() != theta.codomain) throw Error(ErrorKind::DomainMismatch, "y must lie in theta's codomain");
  const Homomorphism lifted = compose(theta, phi0);
  const MonicPoly image = map_coeffs(defining_polynomial(b1), lifted);

  const double ny = norm(y);
  double scale = std::pow(ny, static_cast<double>(image.degree()));
  for (std::size_t k = 0; k < image.degree(); ++k) scale += norm(image.lower()[k]) * std::pow(ny, static_cast<double>(k));
  const double residual = norm(image(y));
  if (residual > tol.root_tol * (1.0 + scale)) {
    throw Error(ErrorKind::NotARoot, "y is not a root of the mapped polynomial (residual " +
                                         std::to_string(residual) + ")");
  }

  const std::size_t n = b1->degree();
  const std::size_t m = b1->base()->dim();
  CMatrix mat(static_cast<Eigen::Index>(y.owner()->dim()), static_cast<Eigen::Index>(n * m));
  Element yk = Element::one(y.owner());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      mat.col(static_cast<Eigen::Index>(k * m + i)) = (lifted(Element::basis(b1->base(), i)) * yk).coords();
    }
    yk = yk * y;
  }
  return Homomorphism{b1, y.owner(), std::move(mat)};
}

// ---------------------------------------------------------------------------

Homomorphism Tower::embedding(std::size_t from, std::size_t to) const {
  if (from > to || to >= layers.size()) throw Error(ErrorKind::LayerMismatch, "bad layer range");
  Homomorphism h = Homomorphism::identity(layers[from]);
  for (std::size_t k = from; k < to; ++k) h = compose(steps[k], h);
  return h;
}

std::size_t Tower::layer_of(const Character& h) const {
  const std::size_t base_depth = ground->depth();
  if (h.root_path.size() < base_depth || h.root_path.size() - base_depth >= layers.size()) {
    throw Error(ErrorKind::LayerMismatch, "character does not belong to this tower");
  }
  const std::size_t layer = h.root_path.size() - base_depth;
  if (static_cast<std::size_t>(h.values.size()) != layers[layer]->dim()) {
    throw Error(ErrorKind::LayerMismatch, "character does not belong to this tower");
  }
  return layer;
}

namespace {

// The same extension chain built twice: equal ground handle, alphas and parameters.
bool same_chain(const AlgebraHandle& a, const AlgebraHandle& b) {
  if (a == b) return true;
  if (a->backend() != Backend::AHExtension || b->backend() != Backend::AHExtension) return false;
  if (a->t() != b->t() || a->degree() != b->degree() || !same_chain(a->base(), b->base())) return false;
  for (std::size_t k = 0; k < a->degree(); ++k) {
    if (a->alpha()[k].coords() != b->alpha()[k].coords()) return false;
  }
  return true;
}

}  // namespace

Tower standard_extend(const AlgebraHandle& ground, const std::vector<MonicPoly>& polys, const TowerOptions& options) {
  if (polys.empty()) throw Error(ErrorKind::InvalidArgument, "tower needs at least one polynomial");
  Tower tower;
  tower.ground = ground;
  tower.polys = polys;
  tower.layers.push_back(ground);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto& p = polys[i];
    const AlgebraHandle& current = tower.layers.back();
    MonicPoly lifted = p;
    if (p.owner() == ground) {
      lifted = map_coeffs(p, tower.embedding(0, i));
    } else if (options.allow_layer_coefficients && same_chain(p.owner(), current)) {
      std::vector<Element> lower;
      for (const auto& c : p.lower()) lower.emplace_back(current, c.coords());
      lifted = MonicPoly(current, lower);
    } else {
      throw Error(ErrorKind::OwnerMismatch, "tower polynomial " + std::to_string(i) +
                                                " must have coefficients in the ground algebra");
    }
    std::optional<NormParameter> param;
    if (i < options.parameters.size()) param = options.parameters[i];
    AlgebraHandle next = ah_extend(current, lifted, param);
    tower.steps.push_back(Homomorphism::embedding(next));
    tower.layers.push_back(std::move(next));
  }
  return tower;
}

Character character_from_path(const AlgebraHandle& layer, std::size_t base_point,
                              const std::vector<Complex>& root_path, const Tolerances& tol) {
  if (root_path.size() != layer->depth()) throw Error(ErrorKind::LayerMismatch, "root path length differs from layer depth");
  if (layer->backend() != Backend::AHExtension) {
    for (auto& c : characters(layer, tol)) {
      if (c.base_point == base_point) return c;
    }
    throw Error(ErrorKind::LayerMismatch, "no ground character at that point");
  }
  std::vector<Complex> prefix(root_path.begin(), root_path.end() - 1);
  const Character h = character_from_path(layer->base(), base_point, prefix, tol);
  const Complex lambda = root_path.back();
  double scale = std::pow(std::abs(lambda), static_cast<double>(layer->degree()));
  double power = 1.0;
  for (const auto& a : layer->alpha()) {
    scale += std::abs(h(a)) * power;
    power *= std::abs(lambda);
  }
  std::vector<Complex> lower;
  for (const auto& a : layer->alpha()) lower.push_back(h(a));
  if (std::abs(numerics::eval_monic(lower, lambda)) > 10.0 * tol.root_tol * (1.0 + scale)) {
    throw Error(ErrorKind::NotARoot, "root path entry does not solve its layer polynomial");
  }
  return lift_character(h, layer, lambda);
}

Character restrict_character(const Tower& tower, const Character& h, std::size_t target, const Tolerances& tol) {
  const std::size_t layer = tower.layer_of(h);
  if (target > layer) throw Error(ErrorKind::LayerMismatch, "cannot restrict to a later layer");
  const auto& dest = tower.layers[target];
  std::vector<Complex> path(h.root_path.begin(), h.root_path.begin() + static_cast<std::ptrdiff_t>(dest->depth()));
  return character_from_path(dest, h.base_point, path, tol);
}

Character extend_character(const Tower& tower, const Character& h, const Tolerances& tol) {
  const std::size_t layer = tower.layer_of(h);
  Character current = h;
  for (std::size_t k = layer + 1; k < tower.layers.size(); ++k) {
    const auto roots = layer_roots(current, tower.layers[k], tol);
    current = lift_character(current, tower.layers[k], roots.front().value);
  }
  return current;
}

}  // namespace ahx
