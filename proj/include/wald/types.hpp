#ifndef WALD_TYPES_HPP
#define WALD_TYPES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <iterator>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace wald {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Mat<double>;
using VectorXd = Vec<double>;

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: shapes, non-finite entries, malformed files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The system Hx = y has no solution (or an operation needs one that does).
class InconsistentHypothesis : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed or produced a value outside its contract.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Numerical tolerances.
///
/// `rank_tol` is an absolute cutoff. When unset, each routine resolves a
/// scale-aware default from the matrix it is looking at:
///   pseudo-inverse:  max(rows, cols) * eps * sigma_max
///   rank decisions:  1e-10 * scale      (rank, rref, consistency, zero rows)
/// where scale is sigma_max for SVD based routines and ||A||_inf for row
/// reduction. Rank decisions on computed matrices (projectors, products)
/// see round-off a few orders above eps, hence the looser default there.
/// `eq_tol` is the relative tolerance used when comparing entries.
template <typename Scalar>
struct Tolerance {
  static constexpr double kRankRelative = 1e-10;

  std::optional<Scalar> rank_tol;
  Scalar eq_tol = Scalar(1e-9);

  Tolerance() = default;
  explicit Tolerance(std::optional<Scalar> rank, Scalar eq = Scalar(1e-9)) : rank_tol(rank), eq_tol(eq) {
    if ((rank_tol && !(*rank_tol >= Scalar(0))) || !(eq_tol >= Scalar(0)))
      throw InvalidArgument("tolerances must be nonnegative");
  }

  /// Singular values at or below this are dropped by the pseudo-inverse.
  Scalar cutoff(Eigen::Index rows, Eigen::Index cols, Scalar scale) const {
    if (rank_tol) return *rank_tol;
    return Scalar(std::max<Eigen::Index>(rows, cols)) * std::numeric_limits<Scalar>::epsilon() * scale;
  }

  /// Magnitudes at or below this count as zero when deciding rank.
  Scalar rank_cutoff(Scalar scale) const {
    if (rank_tol) return *rank_tol;
    return Scalar(kRankRelative) * scale;
  }

  /// |a - b| <= eq_tol * (1 + max(|a|, |b|))
  bool close(Scalar a, Scalar b) const {
    using std::abs;
    return abs(a - b) <= eq_tol * (Scalar(1) + std::max(abs(a), abs(b)));
  }
};

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what = "matrix") {
  if (!a.allFinite()) throw InvalidArgument(std::string(what) + " contains NaN or Inf");
}

/// Builds a matrix from row-major entries, rejecting bad shapes and non-finite values.
template <typename Scalar, typename Range>
Mat<Scalar> make_matrix(Eigen::Index rows, Eigen::Index cols, const Range& entries) {
  if (rows <= 0 || cols <= 0) throw InvalidArgument("matrix dimensions must be positive");
  if (static_cast<Eigen::Index>(std::size(entries)) != rows * cols)
    throw InvalidArgument("entry count does not match rows * cols");
  Mat<Scalar> m(rows, cols);
  auto it = std::begin(entries);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Scalar(*it++);
  require_finite(m);
  return m;
}

/// Entrywise comparison under `tol.close`; shapes must agree.
template <typename DerivedA, typename DerivedB>
bool approx_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                  const Tolerance<typename DerivedA::Scalar>& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!tol.close(a(i, j), b(i, j))) return false;
  return true;
}

}  // namespace wald

#endif  // WALD_TYPES_HPP
