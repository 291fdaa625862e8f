#include <algorithm>

#include "ahx/numerics.hpp"

namespace ahx::numerics {

namespace {

double cutoff(const Eigen::VectorXd& singular, Eigen::Index rows, Eigen::Index cols, const Tolerances& tol) {
  const double smax = singular.size() > 0 ? singular.maxCoeff() : 0.0;
  return smax * static_cast<double>(std::max(rows, cols)) * tol.rank_rel_tol;
}

}  // namespace

std::size_t numerical_rank(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double thr = cutoff(s, m.rows(), m.cols(), tol);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > thr) ++rank;
  }
  return rank;
}

CMatrix null_space(const CMatrix& m, const Tolerances& tol) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double thr = cutoff(s, m.rows(), cols, tol);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > thr) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

CMatrix column_span(const CMatrix& m, const Tolerances& tol) {
  if (m.cols() == 0 || m.rows() == 0) return CMatrix(m.rows(), 0);
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double thr = cutoff(s, m.rows(), m.cols(), tol);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > thr) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

}  // namespace ahx::numerics
