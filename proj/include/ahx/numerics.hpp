#pragma once

// Numerical kernels: complex polynomial roots, division-free determinants,
// null spaces, a dense simplex solver and the quotient-norm minimizer.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ahx/types.hpp"

namespace ahx::numerics {

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Roots of the monic polynomial a_0 + a_1 x + ... + a_{n-1} x^{n-1} + x^n.
/// `lower` holds a_0..a_{n-1}. Roots within kRootClusterTol are reported once
/// with their multiplicity; clusters are ordered by (real, imag).
/// Throws NonConvergence if the residual bound is not met after 1000 sweeps.
std::vector<Root> complex_roots(std::span<const Complex> lower, const Tolerances& tol = {});

/// The roots repeated according to multiplicity.
std::vector<Complex> expand_roots(const std::vector<Root>& roots);

/// Evaluates the monic polynomial with lower coefficients `lower` at `x`.
Complex eval_monic(std::span<const Complex> lower, Complex x);

/// Berkowitz's division-free determinant over a commutative ring.
/// `Ring` needs +, -, * and copy; `zero`/`one` fix the ring's identities.
template <class Ring>
Ring ring_determinant(const std::vector<std::vector<Ring>>& m, const Ring& zero, const Ring& one) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  }
  if (n == 0) return one;

  // c holds the characteristic polynomial det(xI - M_r) of the leading r x r
  // block, highest degree first.
  std::vector<Ring> c{one, zero - m[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // Column of the Toeplitz factor: 1, -a, -R S, -R M S, ..., -R M^{r-1} S.
    std::vector<Ring> col;
    col.reserve(r + 2);
    col.push_back(one);
    col.push_back(zero - m[r][r]);
    std::vector<Ring> v(r, zero);  // M^k S, starting with S
    for (std::size_t i = 0; i < r; ++i) v[i] = m[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      Ring dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = dot + m[r][i] * v[i];
      col.push_back(zero - dot);
      if (k + 1 < r) {
        std::vector<Ring> next(r, zero);
        for (std::size_t i = 0; i < r; ++i) {
          Ring acc = zero;
          for (std::size_t j = 0; j < r; ++j) acc = acc + m[i][j] * v[j];
          next[i] = acc;
        }
        v = std::move(next);
      }
    }
    std::vector<Ring> next_c(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i) {
      Ring acc = zero;
      for (std::size_t j = 0; j <= std::min(i, r); ++j) acc = acc + col[i - j] * c[j];
      next_c[i] = acc;
    }
    c = std::move(next_c);
  }
  // c[n] = det(-M) = (-1)^n det(M)
  return (n % 2 == 0) ? c[n] : zero - c[n];
}

/// Numerical rank with cutoff s_max * max(rows, cols) * rank_rel_tol.
std::size_t numerical_rank(const CMatrix& m, const Tolerances& tol = {});

/// Orthonormal basis of ker(m), one column per basis vector (zero columns when
/// m has full column rank).
CMatrix null_space(const CMatrix& m, const Tolerances& tol = {});

/// Orthonormal basis of the column span.
CMatrix column_span(const CMatrix& m, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Linear programming

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  /// Phase-1 optimum: the minimal total infeasibility.
  double infeasibility = 0.0;
};

/// min c.x subject to A x = b, x >= 0. Dense two-phase tableau simplex with
/// Bland's rule. A row whose phase-1 residual stays above `feas_tol` makes the
/// problem infeasible.
LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  double feas_tol = 1e-9);

/// Is there a probability measure w on the `support` rows with
/// sum_j w_j F(s_j, f) = F(target, f) for every column f of `values`?
/// `values` is points x functions.
bool representing_measure_exists(const CMatrix& values, std::size_t target,
                                 std::span<const std::size_t> support, const Tolerances& tol = {});

/// Same feasibility problem; returns the weights (empty when infeasible).
std::vector<double> representing_measure(const CMatrix& values, std::size_t target,
                                         std::span<const std::size_t> support,
                                         const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Norms of the form  sum_g weight_g * max_r |L_g[r] v|

struct NormGroup {
  double weight = 1.0;
  CMatrix functionals;  // rows act on coordinate vectors
};

using NormStructure = std::vector<NormGroup>;

double evaluate_norm(const NormStructure& norm, const CVector& v);

struct AffineMinResult {
  double value = 0.0;        // norm at the best point found (an upper bound)
  double lower_bound = 0.0;  // certified by the cutting-plane LP
  CVector offset;            // the minimizing element of span(directions)
  int iterations = 0;
  bool converged = false;
};

/// inf over c of || b + K c || for the given norm, by Kelley cutting planes on
/// the convex epigraph. Stops once the gap is below convex_tol.
AffineMinResult affine_min_norm(const NormStructure& norm, const CVector& b, const CMatrix& directions,
                                const Tolerances& tol = {}, int max_iterations = 400);

}  // namespace ahx::numerics
