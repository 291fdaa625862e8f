#include <cmath>
#include <limits>
#include <vector>

#include "ahx/numerics.hpp"

namespace ahx::numerics {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxPivots = 50000;

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : rows_(a.rows()), vars_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1), basis_(a.rows()) {
    t_.setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = b[i] < 0 ? -1.0 : 1.0;
      t_.row(i).head(vars_) = sign * a.row(i);
      t_(i, vars_ + i) = 1.0;
      t_(i, rhs()) = sign * b[i];
      basis_[i] = vars_ + i;
    }
  }

  Eigen::Index rhs() const { return vars_ + rows_; }
  bool is_artificial(Eigen::Index j) const { return j >= vars_ && j < vars_ + rows_; }

  // Runs the simplex on cost vector `cost` (over all non-rhs columns).
  // Returns false when unbounded.
  bool optimize(const Eigen::VectorXd& cost, bool allow_artificial) {
    for (int pivots = 0; pivots < kMaxPivots; ++pivots) {
      // reduced costs
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < rhs(); ++j) {
        if (!allow_artificial && is_artificial(j)) continue;
        double r = cost[j];
        for (Eigen::Index i = 0; i < rows_; ++i) r -= cost[basis_[i]] * t_(i, j);
        if (r < -kPivotTol) {
          entering = j;
          break;  // Bland: lowest index
        }
      }
      if (entering < 0) return true;
      Eigen::Index leaving = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double pivot = t_(i, entering);
        if (pivot <= kPivotTol) continue;
        const double ratio = t_(i, rhs()) / pivot;
        const double tie = 1e-12 * (1.0 + std::abs(best));
        if (leaving < 0 || ratio < best - tie || (std::abs(ratio - best) <= tie && leaving >= 0 && basis_[i] < basis_[leaving])) {
          best = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
    throw Error(ErrorKind::NonConvergence, "simplex pivot budget exhausted");
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    t_ = t_.unaryExpr([](double v) { return std::abs(v) < 1e-14 ? 0.0 : v; });
    basis_[row] = col;
  }

  // After phase 1: pivot zero-level artificials out of the basis when possible.
  void expel_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (Eigen::Index j = 0; j < vars_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double artificial_total() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (is_artificial(basis_[i])) s += std::max(0.0, t_(i, rhs()));
    }
    return s;
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(vars_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) x[basis_[i]] = t_(i, rhs());
    }
    return x;
  }

  Eigen::Index rows_;
  Eigen::Index vars_;
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  double feas_tol) {
  if (a.rows() != b.size() || a.cols() != c.size()) {
    throw Error(ErrorKind::InvalidArgument, "LP dimensions disagree");
  }
  LpResult result;
  // Dependent equality rows only add degeneracy; solve on an independent
  // subset and check the rest against the solution afterwards.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.transpose());
  qr.setThreshold(1e-11);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd ar(rank, a.cols());
  Eigen::VectorXd br(rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    const Eigen::Index r = qr.colsPermutation().indices()[i];
    ar.row(i) = a.row(r);
    br[i] = b[r];
  }
  Tableau tab(ar, br);
  const Eigen::Index total = tab.rhs();

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
  for (Eigen::Index i = 0; i < rank; ++i) phase1[a.cols() + i] = 1.0;
  tab.optimize(phase1, true);
  result.infeasibility = std::max(tab.artificial_total(), (a * tab.solution() - b).cwiseAbs().sum());
  if (result.infeasibility > feas_tol) {
    result.status = LpStatus::Infeasible;
    result.x = tab.solution();
    return result;
  }
  tab.expel_artificials();

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total);
  phase2.head(a.cols()) = c;
  if (!tab.optimize(phase2, false)) {
    result.status = LpStatus::Unbounded;
    result.x = tab.solution();
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = tab.solution();
  result.objective = c.dot(result.x);
  return result;
}

std::vector<double> representing_measure(const CMatrix& values, std::size_t target,
                                         std::span<const std::size_t> support, const Tolerances& tol) {
  if (support.empty()) throw Error(ErrorKind::InvalidArgument, "empty support");
  if (target >= static_cast<std::size_t>(values.rows())) {
    throw Error(ErrorKind::InvalidArgument, "target outside the point set");
  }
  // Rows: total mass, then real and imaginary parts of each moment condition.
  // Rows that are identically zero (e.g. Im of a real function) are dropped.
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  const auto s = static_cast<Eigen::Index>(support.size());
  {
    rows.push_back(Eigen::VectorXd::Ones(s));
    rhs.push_back(1.0);
  }
  for (Eigen::Index f = 0; f < values.cols(); ++f) {
    Eigen::VectorXd re(s), im(s);
    for (Eigen::Index j = 0; j < s; ++j) {
      const Complex v = values(static_cast<Eigen::Index>(support[static_cast<std::size_t>(j)]), f);
      re[j] = v.real();
      im[j] = v.imag();
    }
    const Complex tv = values(static_cast<Eigen::Index>(target), f);
    if (re.cwiseAbs().maxCoeff() > 0.0 || std::abs(tv.real()) > 0.0) {
      rows.push_back(re);
      rhs.push_back(tv.real());
    }
    if (im.cwiseAbs().maxCoeff() > 0.0 || std::abs(tv.imag()) > 0.0) {
      rows.push_back(im);
      rhs.push_back(tv.imag());
    }
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), s);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    b[static_cast<Eigen::Index>(i)] = rhs[i];
  }
  const auto lp = solve_lp(a, b, Eigen::VectorXd::Zero(s), tol.lp_feas_tol);
  if (lp.status == LpStatus::Infeasible) return {};
  return std::vector<double>(lp.x.data(), lp.x.data() + lp.x.size());
}

bool representing_measure_exists(const CMatrix& values, std::size_t target,
                                 std::span<const std::size_t> support, const Tolerances& tol) {
  for (auto s : support) {
    if (s == target) return true;
  }
  return !representing_measure(values, target, support, tol).empty();
}

}  // namespace ahx::numerics
