#ifndef WALD_HYPOTHESIS_HPP
#define WALD_HYPOTHESIS_HPP

#include <cmath>
#include <string_view>
#include <vector>

#include "wald/linalg.hpp"

namespace wald {

/// The linear system H theta = y, H of shape m x d.
///
/// An H with zero rows is allowed and stands for "no constraint"; it only
/// arises as the output of reductions of an all-zero H.
template <typename Scalar>
class LinearHypothesis {
 public:
  LinearHypothesis(Mat<Scalar> h, Vec<Scalar> y) : h_(std::move(h)), y_(std::move(y)) {
    if (h_.cols() <= 0) throw InvalidArgument("hypothesis matrix needs at least one column");
    if (y_.size() != h_.rows())
      throw InvalidArgument("right-hand side has length " + std::to_string(y_.size()) + " but H has " +
                            std::to_string(h_.rows()) + " rows");
    require_finite(h_, "hypothesis matrix");
    require_finite(y_, "right-hand side");
    if (h_.rows() > 0 && h_.isZero(0) && !y_.isZero(0))
      throw InvalidArgument("all-zero hypothesis matrix with nonzero right-hand side has no solution");
  }

  const Mat<Scalar>& H() const { return h_; }
  const Vec<Scalar>& y() const { return y_; }
  Eigen::Index rows() const { return h_.rows(); }
  Eigen::Index dim() const { return h_.cols(); }

  /// [H | y]
  Mat<Scalar> augmented() const {
    Mat<Scalar> a(h_.rows(), h_.cols() + 1);
    a << h_, y_;
    return a;
  }

 private:
  Mat<Scalar> h_;
  Vec<Scalar> y_;
};

template <typename DerivedH, typename DerivedY>
LinearHypothesis<typename DerivedH::Scalar> new_hypothesis(const Eigen::MatrixBase<DerivedH>& h,
                                                           const Eigen::MatrixBase<DerivedY>& y) {
  return {h.eval(), y.eval()};
}

enum class Equivalence { equivalent, not_equivalent, inconsistent_left, inconsistent_right, both_inconsistent };

constexpr std::string_view to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::not_equivalent: return "not-equivalent";
    case Equivalence::inconsistent_left: return "inconsistent-left";
    case Equivalence::inconsistent_right: return "inconsistent-right";
    case Equivalence::both_inconsistent: return "both-inconsistent";
  }
  return "unknown";
}

/// rank(H) == rank([H | y])
template <typename Scalar>
bool is_consistent(const LinearHypothesis<Scalar>& h, const Tolerance<Scalar>& tol = {}) {
  if (h.rows() == 0) return true;
  return rank(h.H(), tol) == rank(h.augmented(), tol);
}

namespace detail {

template <typename Scalar>
Mat<Scalar> reduced_augmented(const LinearHypothesis<Scalar>& h, const Tolerance<Scalar>& tol) {
  auto e = rref(h.augmented(), tol);
  return e.R.topRows(static_cast<Eigen::Index>(e.pivots.size()));
}

}  // namespace detail

/// Decides whether two systems have the same nonempty solution set by
/// comparing the nonzero rows of rref([H1|y1]) and rref([H2|y2]).
template <typename Scalar>
Equivalence equivalent(const LinearHypothesis<Scalar>& h1, const LinearHypothesis<Scalar>& h2,
                       const Tolerance<Scalar>& tol = {}) {
  if (h1.dim() != h2.dim())
    throw InvalidArgument("hypotheses constrain vectors of different dimension (" + std::to_string(h1.dim()) +
                          " vs " + std::to_string(h2.dim()) + ")");
  const bool c1 = is_consistent(h1, tol), c2 = is_consistent(h2, tol);
  if (!c1 && !c2) return Equivalence::both_inconsistent;
  if (!c1) return Equivalence::inconsistent_left;
  if (!c2) return Equivalence::inconsistent_right;
  return approx_equal(detail::reduced_augmented(h1, tol), detail::reduced_augmented(h2, tol), tol)
             ? Equivalence::equivalent
             : Equivalence::not_equivalent;
}

/// The RREF of [H|y] with zero rows removed. Equal (within eq_tol) for all
/// formulations of the same solution set.
template <typename Scalar>
LinearHypothesis<Scalar> canonical_form(const LinearHypothesis<Scalar>& h, const Tolerance<Scalar>& tol = {}) {
  if (!is_consistent(h, tol)) throw InconsistentHypothesis("hypothesis has no solution; no canonical form");
  const Mat<Scalar> r = detail::reduced_augmented(h, tol);
  return {r.leftCols(h.dim()), r.col(h.dim())};
}

template <typename Scalar>
struct ProjectionForm {
  Mat<Scalar> P;
  bool equivalent;  // P theta = y_out has the same solution set as H theta = y
  Vec<Scalar> y;
};

/// Rewrites H theta = y with the projector P = H^T (H H^T)^+ H and
/// y_out = H^T (H H^T)^+ y.
template <typename Scalar>
ProjectionForm<Scalar> projection_form(const LinearHypothesis<Scalar>& h, const Tolerance<Scalar>& tol = {}) {
  if (!is_consistent(h, tol)) throw InconsistentHypothesis("hypothesis has no solution; no projection form");
  Mat<Scalar> p = projection(h.H(), tol);
  if (h.y().isZero(0)) return {std::move(p), true, Vec<Scalar>::Zero(h.dim())};
  const Mat<Scalar> gram = h.H() * h.H().transpose();
  Vec<Scalar> y_out = h.H().transpose() * (pinv(gram, tol) * h.y());
  const bool same = equivalent(h, LinearHypothesis<Scalar>(p, y_out), tol) == Equivalence::equivalent;
  return {std::move(p), same, std::move(y_out)};
}

/// Rows that are nonzero multiples of the class representative
/// `members.front()` (the smallest index); beta[j] satisfies
/// H.row(members[j]) = beta[j] * H.row(members.front()), beta[0] = 1.
template <typename Scalar>
struct DependenceClass {
  std::vector<Eigen::Index> members;
  std::vector<Scalar> beta;

  Eigen::Index representative() const { return members.front(); }

  /// sqrt(1 + beta_2^2 + ... + beta_k^2)
  Scalar weight() const {
    Scalar s(0);
    for (Scalar b : beta) s += b * b;
    using std::sqrt;
    return sqrt(s);
  }
};

/// Zero rows plus classes of pairwise linearly dependent rows, ordered by
/// representative. Indices are 0-based.
template <typename Scalar>
struct DependencePartition {
  std::vector<Eigen::Index> zero_rows;
  std::vector<DependenceClass<Scalar>> classes;
};

template <typename Derived>
DependencePartition<typename Derived::Scalar> dependence_classes(
    const Eigen::MatrixBase<Derived>& h, const Tolerance<typename Derived::Scalar>& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  require_finite(h);
  const Mat<Scalar> hm = h;
  const Scalar cut = tol.rank_cutoff(sigma_max(svd(hm)));

  DependencePartition<Scalar> out;
  std::vector<Vec<Scalar>> directions;  // sign-fixed unit rows of the representatives
  for (Eigen::Index i = 0; i < hm.rows(); ++i) {
    const Scalar norm = hm.row(i).norm();
    if (norm <= cut) {
      out.zero_rows.push_back(i);
      continue;
    }
    Vec<Scalar> u = hm.row(i).transpose() / norm;
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      if (abs(u(j)) > tol.eq_tol) {
        if (u(j) < 0) u = -u;
        break;
      }
    }
    bool placed = false;
    for (std::size_t k = 0; k < directions.size() && !placed; ++k) {
      if (!approx_equal(u, directions[k], tol)) continue;
      auto& cls = out.classes[k];
      const auto rep = hm.row(cls.representative());
      cls.members.push_back(i);
      cls.beta.push_back(hm.row(i).dot(rep) / rep.squaredNorm());
      placed = true;
    }
    if (!placed) {
      directions.push_back(std::move(u));
      out.classes.push_back({{i}, {Scalar(1)}});
    }
  }
  return out;
}

/// Drops zero rows and collapses every dependence class into its
/// representative row scaled by the class weight. Leaves the ATS and the
/// standardized ATS unchanged.
template <typename Scalar>
LinearHypothesis<Scalar> reduce_for_ats(const LinearHypothesis<Scalar>& h, const Tolerance<Scalar>& tol = {}) {
  const auto part = dependence_classes(h.H(), tol);
  const auto& y = h.y();
  for (auto i : part.zero_rows)
    if (!tol.close(y(i), Scalar(0)))
      throw InconsistentHypothesis("zero row " + std::to_string(i + 1) + " has nonzero right-hand side");

  const auto l = static_cast<Eigen::Index>(part.classes.size());
  Mat<Scalar> hr(l, h.dim());
  Vec<Scalar> yr(l);
  for (Eigen::Index k = 0; k < l; ++k) {
    const auto& cls = part.classes[k];
    const auto rep = cls.representative();
    for (std::size_t j = 1; j < cls.members.size(); ++j)
      if (!tol.close(y(cls.members[j]), cls.beta[j] * y(rep)))
        throw InconsistentHypothesis("row " + std::to_string(cls.members[j] + 1) + " is a multiple of row " +
                                     std::to_string(rep + 1) + " but its right-hand side is not");
    const Scalar w = cls.weight();
    hr.row(k) = w * h.H().row(rep);
    yr(k) = w * y(rep);
  }
  return {std::move(hr), std::move(yr)};
}

}  // namespace wald

#endif  // WALD_HYPOTHESIS_HPP
