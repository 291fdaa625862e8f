#include "ahx/algebra.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace ahx {

bool PointSet::has_coords() const {
  for (const auto& c : coords) {
    if (!c) return false;
  }
  return !coords.empty();
}

Complex PointSet::coord(std::size_t i) const {
  if (i >= coords.size() || !coords[i]) {
    throw Error(ErrorKind::InvalidArgument, "point " + std::to_string(i) + " has no coordinate");
  }
  return *coords[i];
}

PointSet PointSet::from_coords(const std::vector<Complex>& zs) {
  PointSet p;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    p.labels.push_back("p" + std::to_string(i));
    p.coords.emplace_back(zs[i]);
  }
  return p;
}

PointSet PointSet::abstract(std::size_t n) {
  PointSet p;
  for (std::size_t i = 0; i < n; ++i) {
    p.labels.push_back("p" + std::to_string(i));
    p.coords.emplace_back(std::nullopt);
  }
  return p;
}

void PointSet::validate() const {
  if (labels.empty()) throw Error(ErrorKind::InvalidArgument, "point set is empty");
  if (coords.size() != labels.size()) {
    throw Error(ErrorKind::InvalidArgument, "point labels and coordinates differ in length");
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw Error(ErrorKind::InvalidArgument, "point labels are not distinct");
  for (const auto& c : coords) {
    if (c && !(std::isfinite(c->real()) && std::isfinite(c->imag()))) {
      throw Error(ErrorKind::InvalidArgument, "non-finite point coordinate");
    }
  }
}

const char* to_string(Backend b) {
  switch (b) {
    case Backend::Pointwise: return "pointwise";
    case Backend::PolyModel: return "poly_model";
    case Backend::AHExtension: return "ah_extension";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

AlgebraHandle Algebra::pointwise(PointSet points) {
  points.validate();
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->backend_ = Backend::Pointwise;
  a->dim_ = points.size();
  a->norm_ = {numerics::NormGroup{1.0, CMatrix::Identity(static_cast<Eigen::Index>(a->dim_),
                                                         static_cast<Eigen::Index>(a->dim_))}};
  a->points_ = std::move(points);
  return a;
}

AlgebraHandle Algebra::poly_model(PointSet points, int degree_bound) {
  points.validate();
  if (degree_bound < 0) throw Error(ErrorKind::InvalidArgument, "negative degree bound");
  if (!points.has_coords()) throw Error(ErrorKind::InvalidArgument, "poly model needs point coordinates");
  if (static_cast<std::size_t>(degree_bound) + 1 > points.size()) {
    throw Error(ErrorKind::InvalidArgument, "poly model needs D+1 <= number of points");
  }
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->backend_ = Backend::PolyModel;
  a->dim_ = static_cast<std::size_t>(degree_bound) + 1;
  a->degree_bound_ = degree_bound;
  CMatrix vandermonde(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(a->dim_));
  for (std::size_t i = 0; i < points.size(); ++i) {
    Complex p{1.0, 0.0};
    for (std::size_t k = 0; k < a->dim_; ++k) {
      vandermonde(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = p;
      p *= points.coord(i);
    }
  }
  // D+1 distinct sample points make evaluation injective.
  if (numerics::numerical_rank(vandermonde) < a->dim_) {
    throw Error(ErrorKind::InvalidArgument, "poly model sample points do not determine degree-D polynomials");
  }
  a->norm_ = {numerics::NormGroup{1.0, vandermonde}};
  a->points_ = std::move(points);
  return a;
}

AlgebraHandle Algebra::extension(const AlgebraHandle& base, std::vector<Element> alpha_lower, double t) {
  if (!base) throw Error(ErrorKind::InvalidArgument, "null base algebra");
  if (alpha_lower.empty()) throw Error(ErrorKind::DegenerateDegree, "extension polynomial must have degree >= 1");
  for (const auto& c : alpha_lower) {
    if (c.owner() != base) throw Error(ErrorKind::OwnerMismatch, "polynomial coefficient is not in the base algebra");
  }
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidParameter, "norm parameter must be positive");
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->backend_ = Backend::AHExtension;
  const std::size_t n = alpha_lower.size();
  const std::size_t m = base->dim();
  a->dim_ = n * m;
  a->base_ = base;
  a->alpha_ = std::make_shared<const std::vector<Element>>(std::move(alpha_lower));
  a->t_ = t;
  const auto total = static_cast<Eigen::Index>(n * m);
  double tk = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& g : base->norm_structure()) {
      CMatrix lifted = CMatrix::Zero(g.functionals.rows(), total);
      lifted.middleCols(static_cast<Eigen::Index>(k * m), static_cast<Eigen::Index>(m)) = g.functionals;
      a->norm_.push_back(numerics::NormGroup{g.weight * tk, std::move(lifted)});
    }
    tk *= t;
  }
  return a;
}

AlgebraHandle Algebra::scalars() {
  static const AlgebraHandle c = [] {
    PointSet p;
    p.labels = {"*"};
    p.coords = {std::nullopt};
    return pointwise(std::move(p));
  }();
  return c;
}

const PointSet& Algebra::points() const {
  return backend_ == Backend::AHExtension ? base_->points() : points_;
}

const std::vector<Element>& Algebra::alpha() const {
  if (backend_ != Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "not an extension");
  return *alpha_;
}

std::size_t Algebra::degree() const { return alpha().size(); }

std::size_t Algebra::depth() const {
  return backend_ == Backend::AHExtension ? base_->depth() + 1 : 0;
}

AlgebraHandle Algebra::ground() const {
  if (backend_ == Backend::AHExtension) return base_->ground();
  return shared_from_this();
}

std::string Algebra::describe() const {
  std::ostringstream os;
  switch (backend_) {
    case Backend::Pointwise: os << "C(X), |X| = " << points_.size(); break;
    case Backend::PolyModel: os << "poly model, D = " << degree_bound_ << ", " << points_.size() << " samples"; break;
    case Backend::AHExtension:
      os << "(" << base_->describe() << ")[x]/(deg " << degree() << "), t = " << t_;
      break;
  }
  return os.str();
}

}  // namespace ahx
