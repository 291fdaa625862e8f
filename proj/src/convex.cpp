#include <algorithm>
#include <cmath>
#include <numbers>

#include "ahx/numerics.hpp"

namespace ahx::numerics {

double evaluate_norm(const NormStructure& norm, const CVector& v) {
  double total = 0.0;
  for (const auto& g : norm) {
    if (g.functionals.rows() == 0) continue;
    total += g.weight * (g.functionals * v).cwiseAbs().maxCoeff();
  }
  return total;
}

namespace {

struct Cut {
  std::size_t group;
  Eigen::Index row;
  double angle;
};

}  // namespace

AffineMinResult affine_min_norm(const NormStructure& norm, const CVector& b, const CMatrix& directions,
                                const Tolerances& tol, int max_iterations) {
  AffineMinResult result;
  const CMatrix basis = column_span(directions, tol);
  const Eigen::Index m = basis.cols();
  if (m == 0) {
    result.value = result.lower_bound = evaluate_norm(norm, b);
    result.offset = CVector::Zero(b.size());
    result.converged = true;
    return result;
  }

  // Each functional row L gives the affine map c -> L b + (L basis) c.
  std::vector<CVector> offsets;
  std::vector<CMatrix> slopes;
  for (const auto& g : norm) {
    offsets.push_back(g.functionals * b);
    slopes.push_back(g.functionals * basis);
  }
  const auto groups = norm.size();
  const Eigen::Index xvars = 4 * m;  // (Re c, Im c) split into positive and negative parts
  const auto svar = [&](std::size_t g) { return xvars + static_cast<Eigen::Index>(g); };
  const Eigen::Index base_vars = xvars + static_cast<Eigen::Index>(groups);

  std::vector<Cut> cuts;
  for (std::size_t g = 0; g < groups; ++g) {
    for (Eigen::Index r = 0; r < slopes[g].rows(); ++r) {
      for (int q = 0; q < 4; ++q) cuts.push_back(Cut{g, r, q * std::numbers::pi / 2});
    }
  }

  auto value_at = [&](const CVector& c) {
    double total = 0.0;
    for (std::size_t g = 0; g < groups; ++g) {
      if (slopes[g].rows() == 0) continue;
      total += norm[g].weight * (offsets[g] + slopes[g] * c).cwiseAbs().maxCoeff();
    }
    return total;
  };

  double best = evaluate_norm(norm, b);
  CVector best_c = CVector::Zero(m);
  double lower = 0.0;

  for (int iter = 0; iter < max_iterations; ++iter) {
    result.iterations = iter + 1;
    const auto rows = static_cast<Eigen::Index>(cuts.size());
    const Eigen::Index vars = base_vars + rows;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, vars);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto& cut = cuts[static_cast<std::size_t>(i)];
      const Complex rot = std::polar(1.0, -cut.angle);
      for (Eigen::Index k = 0; k < m; ++k) {
        const Complex z = rot * slopes[cut.group](cut.row, k);
        a(i, k) = z.real();          // Re c_k, positive part
        a(i, m + k) = -z.imag();     // Im c_k, positive part
        a(i, 2 * m + k) = -z.real();
        a(i, 3 * m + k) = z.imag();
      }
      a(i, svar(cut.group)) = -1.0;
      a(i, base_vars + i) = 1.0;
      rhs[i] = -(rot * offsets[cut.group][cut.row]).real();
    }
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(vars);
    for (std::size_t g = 0; g < groups; ++g) cost[svar(g)] = norm[g].weight;

    const auto lp = solve_lp(a, rhs, cost, 1e-9);
    if (lp.status != LpStatus::Optimal) {
      throw Error(ErrorKind::NonConvergence, "quotient-norm cutting-plane LP failed");
    }
    lower = std::max(lower, lp.objective);
    CVector c(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      c[k] = Complex(lp.x[k] - lp.x[2 * m + k], lp.x[m + k] - lp.x[3 * m + k]);
    }
    const double upper = value_at(c);
    if (upper < best) {
      best = upper;
      best_c = c;
    }
    if (best - lower <= tol.convex_tol) {
      result.converged = true;
      break;
    }
    // Tangent cuts at the current point for every violated functional.
    for (std::size_t g = 0; g < groups; ++g) {
      const CVector vals = offsets[g] + slopes[g] * c;
      const double level = lp.x[svar(g)];
      for (Eigen::Index r = 0; r < vals.size(); ++r) {
        if (std::abs(vals[r]) > level + 1e-13) cuts.push_back(Cut{g, r, std::arg(vals[r])});
      }
    }
  }
  result.value = best;
  result.lower_bound = lower;
  result.offset = basis * best_c;
  return result;
}

}  // namespace ahx::numerics
