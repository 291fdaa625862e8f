#include "ahx/cole.hpp"

#include <cmath>

namespace ahx {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

CVector power(const CVector& v, std::size_t k) {
  CVector out = CVector::Ones(v.size());
  for (std::size_t j = 0; j < k; ++j) out = out.cwiseProduct(v);
  return out;
}

}  // namespace

SpacePoly on_points(const MonicPoly& alpha) {
  const auto backend = alpha.owner()->backend();
  if (backend == Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "Cole spaces need a ground algebra");
  SpacePoly p;
  for (const auto& a : alpha.lower()) p.lower.push_back(a.point_values());
  return p;
}

CMatrix function_values(const AlgebraHandle& a) {
  if (a->backend() == Backend::AHExtension) throw Error(ErrorKind::InvalidArgument, "Cole spaces need a ground algebra");
  CMatrix v(idx(a->points().size()), idx(a->dim()));
  for (std::size_t j = 0; j < a->dim(); ++j) v.col(idx(j)) = Element::basis(a, j).point_values();
  return v;
}

std::vector<FiberPoint> cole_space(std::size_t base_size, const std::vector<SpacePoly>& polys, const Tolerances& tol) {
  if (polys.empty()) throw Error(ErrorKind::InvalidArgument, "Cole extension needs at least one polynomial");
  for (const auto& p : polys) {
    if (p.degree() == 0) throw Error(ErrorKind::InvalidArgument, "polynomial of degree 0");
    for (const auto& c : p.lower) {
      if (static_cast<std::size_t>(c.size()) != base_size) throw Error(ErrorKind::DomainMismatch, "coefficient has wrong length");
    }
  }
  std::vector<FiberPoint> out;
  for (std::size_t s = 0; s < base_size; ++s) {
    std::vector<std::vector<Complex>> per_poly;
    for (const auto& p : polys) {
      std::vector<Complex> lower;
      for (const auto& c : p.lower) lower.push_back(c[idx(s)]);
      std::vector<Complex> roots;
      for (const auto& r : numerics::complex_roots(lower, tol)) roots.push_back(r.value);
      per_poly.push_back(std::move(roots));
    }
    // cartesian product, first polynomial varying slowest
    std::vector<std::vector<Complex>> combos{{}};
    for (const auto& roots : per_poly) {
      std::vector<std::vector<Complex>> next;
      for (const auto& c : combos) {
        for (const auto& r : roots) {
          auto extended = c;
          extended.push_back(r);
          next.push_back(std::move(extended));
        }
      }
      combos = std::move(next);
    }
    for (auto& c : combos) out.push_back(FiberPoint{s, std::move(c)});
  }
  return out;
}

std::vector<FiberPoint> cole_space(const AlgebraHandle& a, const std::vector<MonicPoly>& polys, const Tolerances& tol) {
  std::vector<SpacePoly> sp;
  for (const auto& p : polys) {
    if (p.owner() != a) throw Error(ErrorKind::OwnerMismatch, "polynomial is not over the base algebra");
    sp.push_back(on_points(p));
  }
  return cole_space(a->points().size(), sp, tol);
}

CVector ColeAlgebra::pull_back(const CVector& f) const {
  if (static_cast<std::size_t>(f.size()) != base_size) throw Error(ErrorKind::DomainMismatch, "function on another space");
  CVector out(idx(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) out[idx(i)] = f[idx(space[i].base)];
  return out;
}

double ColeAlgebra::membership_residual(const CVector& f) const {
  if (f.size() != basis.rows()) throw Error(ErrorKind::DomainMismatch, "function on another space");
  const CVector r = f - basis * (basis.adjoint() * f);
  return r.norm() / std::max(1.0, f.norm());
}

bool ColeAlgebra::separates_points(double tol) const {
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < basis.rows(); ++j) {
      if ((basis.row(i) - basis.row(j)).cwiseAbs().maxCoeff() <= tol) return false;
    }
  }
  return true;
}

ColeAlgebra cole_extend(const CMatrix& base_functions, const std::vector<SpacePoly>& polys, const Tolerances& tol) {
  ColeAlgebra c;
  c.base_size = static_cast<std::size_t>(base_functions.rows());
  c.polys = polys;
  c.space = cole_space(c.base_size, polys, tol);
  const auto n = idx(c.space.size());

  for (std::size_t k = 0; k < polys.size(); ++k) {
    CVector p(n);
    for (Eigen::Index i = 0; i < n; ++i) p[i] = c.space[static_cast<std::size_t>(i)].roots[k];
    c.root_functions.push_back(std::move(p));
  }

  CMatrix gens(n, 1 + base_functions.cols() + idx(polys.size()));
  gens.col(0).setOnes();
  for (Eigen::Index j = 0; j < base_functions.cols(); ++j) gens.col(1 + j) = c.pull_back(base_functions.col(j));
  for (std::size_t k = 0; k < polys.size(); ++k) gens.col(1 + base_functions.cols() + idx(k)) = c.root_functions[k];
  gens = numerics::column_span(gens, tol);

  CMatrix span = gens;
  int stable = 0;
  while (stable < 2) {
    CMatrix grown(n, span.cols() * (1 + gens.cols()));
    grown.leftCols(span.cols()) = span;
    for (Eigen::Index g = 0; g < gens.cols(); ++g) {
      grown.middleCols(span.cols() * (1 + g), span.cols()) = gens.col(g).asDiagonal() * span;
    }
    CMatrix next = numerics::column_span(grown, tol);
    stable = next.cols() == span.cols() ? stable + 1 : 0;
    span = std::move(next);
    ++c.closure_rounds;
  }
  c.basis = std::move(span);
  return c;
}

ColeAlgebra cole_algebra(const AlgebraHandle& a, const std::vector<MonicPoly>& polys, const Tolerances& tol) {
  std::vector<SpacePoly> sp;
  for (const auto& p : polys) {
    if (p.owner() != a) throw Error(ErrorKind::OwnerMismatch, "polynomial is not over the base algebra");
    sp.push_back(on_points(p));
  }
  return cole_extend(function_values(a), sp, tol);
}

NaturalityReport naturality_check(const ColeAlgebra& cole) {
  // A unital algebra of functions on a finite set has no nilpotents, so it is
  // a product of copies of C: one character per dimension.
  NaturalityReport r;
  r.space_size = cole.space.size();
  r.character_count = cole.dim();
  std::vector<Eigen::Index> reps;
  for (Eigen::Index i = 0; i < cole.basis.rows(); ++i) {
    bool seen = false;
    for (auto j : reps) {
      if ((cole.basis.row(i) - cole.basis.row(j)).cwiseAbs().maxCoeff() <= 1e-9) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(i);
  }
  r.distinct_evaluations = reps.size();
  r.natural = r.character_count == r.space_size && r.distinct_evaluations == r.character_count;
  return r;
}

CVector RhoStar::operator()(const Element& b) const {
  if (b.owner() != domain) throw Error(ErrorKind::OwnerMismatch, "element is not in the extension");
  return matrix * b.coords();
}

RhoStar rho_star(const AlgebraHandle& b, const ColeAlgebra& cole, const Tolerances& tol) {
  if (b->backend() != Backend::AHExtension || b->base()->backend() == Backend::AHExtension) {
    throw Error(ErrorKind::MismatchedData, "rho* needs a single extension of a ground algebra");
  }
  if (cole.polys.size() != 1 || cole.base_size != b->base()->points().size()) {
    throw Error(ErrorKind::MismatchedData, "Cole algebra is not built from the same data");
  }
  const SpacePoly alpha = on_points(defining_polynomial(b));
  const SpacePoly& beta = cole.polys.front();
  if (alpha.degree() != beta.degree()) throw Error(ErrorKind::MismatchedData, "polynomials differ");
  for (std::size_t k = 0; k < alpha.degree(); ++k) {
    if ((alpha.lower[k] - beta.lower[k]).cwiseAbs().maxCoeff() > kElementTol) {
      throw Error(ErrorKind::MismatchedData, "polynomials differ");
    }
  }

  const CMatrix base = function_values(b->base());
  const std::size_t m = b->base()->dim();
  RhoStar r;
  r.domain = b;
  r.matrix.resize(idx(cole.space.size()), idx(b->dim()));
  for (std::size_t k = 0; k < b->degree(); ++k) {
    const CVector pk = power(cole.root_functions.front(), k);
    for (std::size_t i = 0; i < m; ++i) {
      r.matrix.col(idx(k * m + i)) = cole.pull_back(base.col(idx(i))).cwiseProduct(pk);
    }
  }
  CMatrix joint(cole.basis.rows(), cole.basis.cols() + r.matrix.cols());
  joint << cole.basis, r.matrix;
  r.image_in_algebra = numerics::numerical_rank(joint, tol) == cole.dim();
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> silov_boundary(const CMatrix& values, const Tolerances& tol) {
  // A point with a representing measure on the current set can go; measures
  // compose, so one pass in index order reaches the minimal set.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < static_cast<std::size_t>(values.rows()); ++i) keep.push_back(i);
  for (std::size_t i = 0; i < static_cast<std::size_t>(values.rows()); ++i) {
    std::vector<std::size_t> others;
    for (auto j : keep) {
      if (j != i) others.push_back(j);
    }
    if (!others.empty() && numerics::representing_measure_exists(values, i, others, tol)) keep = std::move(others);
  }
  return keep;
}

std::vector<std::size_t> silov_boundary(const AlgebraHandle& a, const Tolerances& tol) {
  return silov_boundary(function_values(a), tol);
}

bool is_boundary(const CMatrix& values, const std::vector<std::size_t>& subset) {
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    const double full = values.col(j).cwiseAbs().maxCoeff();
    double on_subset = 0.0;
    for (auto i : subset) on_subset = std::max(on_subset, std::abs(values(idx(i), j)));
    if (on_subset < full * (1.0 - 1e-12)) return false;
  }
  return true;
}

bool is_minimal_boundary(const CMatrix& values, const std::vector<std::size_t>& subset, const Tolerances& tol) {
  for (auto i : subset) {
    std::vector<std::size_t> others;
    for (auto j : subset) {
      if (j != i) others.push_back(j);
    }
    if (!others.empty() && numerics::representing_measure_exists(values, i, others, tol)) return false;
  }
  return true;
}

TopologicalZeroDivisor is_topological_zero_divisor(const Element& d, const std::vector<std::size_t>& boundary,
                                                   double relative_threshold) {
  if (boundary.empty()) throw Error(ErrorKind::InvalidArgument, "empty boundary");
  const CVector v = d.point_values();
  TopologicalZeroDivisor r;
  r.element_norm = norm(d);
  r.relative_threshold = relative_threshold;
  r.threshold = relative_threshold * r.element_norm;
  r.boundary_min = std::abs(v[idx(boundary.front())]);
  for (auto i : boundary) r.boundary_min = std::min(r.boundary_min, std::abs(v[idx(i)]));
  r.verdict = r.boundary_min <= r.threshold;
  return r;
}

ExtensionComparison compare_extensions(const AlgebraHandle& a, const MonicPoly& alpha, const Tolerances& tol) {
  if (alpha.owner() != a) throw Error(ErrorKind::OwnerMismatch, "polynomial is not over the base algebra");
  ExtensionComparison c{discriminant(alpha), 0.0, false, false, {}, {}, {}};
  c.discriminant_norm = norm(c.discriminant);
  c.discriminant_zero = c.discriminant.is_zero();
  c.discriminant_zero_divisor = is_zero_divisor(c.discriminant, tol);
  c.boundary = silov_boundary(a, tol);
  c.topological = is_topological_zero_divisor(c.discriminant, c.boundary);
  if (c.discriminant_zero || c.discriminant_zero_divisor) c.verdict = "tractability already fails";
  else if (c.topological.verdict) c.verdict = "not isomorphic";
  else c.verdict = "topologically isomorphic";
  return c;
}

// ---------------------------------------------------------------------------

std::size_t ColeTower::space_size(std::size_t stage) const {
  if (stage == 0) return static_cast<std::size_t>(base_functions.rows());
  return stages.at(stage - 1).space.size();
}

CMatrix ColeTower::algebra_basis(std::size_t stage) const {
  if (stage == 0) {
    CMatrix with_one(base_functions.rows(), base_functions.cols() + 1);
    with_one << CVector::Ones(base_functions.rows()), base_functions;
    return numerics::column_span(with_one);
  }
  return stages.at(stage - 1).basis;
}

std::vector<Complex> ColeTower::path(std::size_t stage, std::size_t point) const {
  if (stage == 0) return {Complex(static_cast<double>(point), 0.0)};
  const auto& fp = stages.at(stage - 1).space.at(point);
  auto out = path(stage - 1, fp.base);
  out.insert(out.end(), fp.roots.begin(), fp.roots.end());
  return out;
}

std::vector<std::size_t> ColeTower::projection(std::size_t from, std::size_t to) const {
  if (from > to || to > depth()) throw Error(ErrorKind::LayerMismatch, "bad stage range");
  std::vector<std::size_t> map(space_size(to));
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  for (std::size_t s = to; s > from; --s) {
    for (auto& i : map) i = stages[s - 1].space[i].base;
  }
  return map;
}

std::vector<std::size_t> ColeTower::projection_by_path(std::size_t from, std::size_t to) const {
  if (from > to || to > depth()) throw Error(ErrorKind::LayerMismatch, "bad stage range");
  std::vector<std::vector<Complex>> targets;
  for (std::size_t j = 0; j < space_size(from); ++j) targets.push_back(path(from, j));
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i < space_size(to); ++i) {
    const auto p = path(to, i);
    std::size_t found = targets.size();
    for (std::size_t j = 0; j < targets.size() && found == targets.size(); ++j) {
      bool same = true;
      for (std::size_t k = 0; k < targets[j].size() && same; ++k) same = std::abs(targets[j][k] - p[k]) <= 1e-12;
      if (same) found = j;
    }
    if (found == targets.size()) throw Error(ErrorKind::LayerMismatch, "path has no image");
    map.push_back(found);
  }
  return map;
}

ColeTower cole_tower(const AlgebraHandle& a, const std::vector<StageGenerator>& stages, const Tolerances& tol) {
  if (stages.empty()) throw Error(ErrorKind::InvalidArgument, "Cole tower needs depth >= 1");
  ColeTower tower;
  tower.base_functions = function_values(a);
  for (std::size_t k = 0; k < stages.size(); ++k) {
    auto polys = stages[k](tower);
    const CMatrix basis = tower.algebra_basis(k);
    for (const auto& p : polys) {
      for (const auto& c : p.lower) {
        if (c.size() != basis.rows()) throw Error(ErrorKind::DomainMismatch, "stage polynomial on the wrong space");
        const double r = (c - basis * (basis.adjoint() * c)).norm() / std::max(1.0, c.norm());
        if (r > 1e-9) {
          throw Error(ErrorKind::InvalidArgument,
                      "stage " + std::to_string(k + 1) + " coefficient is not in the previous algebra");
        }
      }
    }
    tower.stages.push_back(cole_extend(basis, polys, tol));
  }
  return tower;
}

ColeTowerReport check_cole_tower(const ColeTower& tower, std::size_t samples, std::mt19937_64& rng) {
  ColeTowerReport r;
  r.samples = samples;
  std::normal_distribution<double> gauss;
  for (std::size_t to = 0; to <= tower.depth(); ++to) {
    for (std::size_t from = 0; from <= to; ++from) {
      const auto composed = tower.projection(from, to);
      if (composed != tower.projection_by_path(from, to)) r.projections_compatible = false;
      std::vector<bool> hit(tower.space_size(from), false);
      for (auto i : composed) hit[i] = true;
      for (bool h : hit) r.projections_surjective = r.projections_surjective && h;
      // pi_{from,mid} o pi_{mid,to}
      for (std::size_t mid = from; mid <= to; ++mid) {
        const auto outer = tower.projection(from, mid);
        const auto inner = tower.projection(mid, to);
        for (std::size_t i = 0; i < composed.size(); ++i) {
          if (outer[inner[i]] != composed[i]) r.projections_compatible = false;
        }
      }
      if (from == to) continue;
      const CMatrix basis = tower.algebra_basis(from);
      for (std::size_t s = 0; s < samples; ++s) {
        CVector coeffs(basis.cols());
        for (auto& c : coeffs) c = Complex(gauss(rng), gauss(rng));
        const CVector f = basis * coeffs;
        CVector pulled(idx(composed.size()));
        for (std::size_t i = 0; i < composed.size(); ++i) pulled[idx(i)] = f[idx(composed[i])];
        const double defect = std::abs(pulled.cwiseAbs().maxCoeff() - f.cwiseAbs().maxCoeff());
        r.max_isometry_defect = std::max(r.max_isometry_defect, defect);
      }
    }
  }
  for (std::size_t k = 1; k <= tower.depth(); ++k) {
    const auto& stage = tower.stages[k - 1];
    for (std::size_t j = 0; j < stage.polys.size(); ++j) {
      const auto& p = stage.polys[j];
      const CVector& root = stage.root_functions[j];
      CVector value = power(root, p.degree());
      for (std::size_t q = 0; q < p.degree(); ++q) value += stage.pull_back(p.lower[q]).cwiseProduct(power(root, q));
      r.max_root_residual = std::max(r.max_root_residual, value.cwiseAbs().maxCoeff());
      if (!stage.contains(root)) r.max_root_residual = std::max(r.max_root_residual, 1.0);
    }
  }
  return r;
}

}  // namespace ahx
