#ifndef WALD_LINALG_HPP
#define WALD_LINALG_HPP

#include <vector>

#include "wald/types.hpp"

namespace wald {

template <typename Scalar>
struct Svd {
  Mat<Scalar> U;
  Vec<Scalar> s;  // descending
  Mat<Scalar> Vt;
};

/// Thin singular value decomposition, A = U * diag(s) * Vt.
template <typename Derived>
Svd<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  require_finite(a);
  const Eigen::Index k = std::min(a.rows(), a.cols());
  if (k == 0) return {Mat<Scalar>::Zero(a.rows(), 0), Vec<Scalar>(0), Mat<Scalar>::Zero(0, a.cols())};
  Eigen::BDCSVD<Mat<Scalar>> dec(a.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw NumericError("singular value decomposition did not converge");
  return {dec.matrixU(), dec.singularValues(), dec.matrixV().transpose()};
}

/// Largest singular value, 0 for empty matrices.
template <typename Scalar>
Scalar sigma_max(const Svd<Scalar>& d) {
  return d.s.size() ? d.s(0) : Scalar(0);
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a,
                  const Tolerance<typename Derived::Scalar>& tol = {}) {
  const auto d = svd(a);
  return (d.s.array() > tol.rank_cutoff(sigma_max(d))).count();
}

/// Moore-Penrose pseudo-inverse; singular values at or below the cutoff count as zero.
template <typename Derived>
Mat<typename Derived::Scalar> pinv(const Eigen::MatrixBase<Derived>& a,
                                   const Tolerance<typename Derived::Scalar>& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const auto d = svd(a);
  const Scalar cut = tol.cutoff(a.rows(), a.cols(), sigma_max(d));
  Vec<Scalar> inv(d.s.size());
  for (Eigen::Index i = 0; i < d.s.size(); ++i) inv(i) = d.s(i) > cut ? Scalar(1) / d.s(i) : Scalar(0);
  return d.Vt.transpose() * inv.asDiagonal() * d.U.transpose();
}

template <typename Scalar>
struct RowEchelon {
  Mat<Scalar> R;
  std::vector<Eigen::Index> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination with partial pivoting.
///
/// A column whose largest remaining entry is at or below the cutoff is
/// treated as zero; entries that cancel down to the cutoff during elimination
/// are snapped to exact zero, and pivots are set to exactly one.
template <typename Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& a,
                                          const Tolerance<typename Derived::Scalar>& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  require_finite(a);
  RowEchelon<Scalar> out{a.eval(), {}};
  Mat<Scalar>& r = out.R;
  const Eigen::Index rows = r.rows(), cols = r.cols();
  const Scalar inf_norm = rows && cols ? r.cwiseAbs().rowwise().sum().maxCoeff() : Scalar(0);
  const Scalar cut = tol.rank_cutoff(inf_norm);

  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index p = 0;
    const Scalar best = r.col(col).segment(row, rows - row).cwiseAbs().maxCoeff(&p);
    p += row;
    if (best <= cut) {
      r.col(col).segment(row, rows - row).setZero();
      continue;
    }
    r.row(row).swap(r.row(p));
    r.row(row) /= r(row, col);
    r(row, col) = Scalar(1);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == row) continue;
      const Scalar f = r(i, col);
      if (f == Scalar(0)) continue;
      r.row(i) -= f * r.row(row);
      r(i, col) = Scalar(0);
      for (Eigen::Index j = col + 1; j < cols; ++j)
        if (abs(r(i, j)) <= cut) r(i, j) = Scalar(0);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

/// Orthogonal projector onto the row space of H: H^T (H H^T)^+ H.
template <typename Derived>
Mat<typename Derived::Scalar> projection(const Eigen::MatrixBase<Derived>& h,
                                         const Tolerance<typename Derived::Scalar>& tol = {}) {
  using Scalar = typename Derived::Scalar;
  const Mat<Scalar> hm = h;
  const Mat<Scalar> gram = hm * hm.transpose();
  return hm.transpose() * pinv(gram, tol) * hm;
}

template <typename DerivedA, typename DerivedB>
Mat<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  require_finite(a);
  require_finite(b);
  Mat<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace wald

#endif  // WALD_LINALG_HPP
