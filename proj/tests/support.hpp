#ifndef WALD_TESTS_SUPPORT_HPP
#define WALD_TESTS_SUPPORT_HPP

// Random generators and brute-force oracles shared by the test suites.
// The oracles use only pseudo-inverses and residuals, never rref.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "wald/wald.hpp"

namespace wald::testing {

using Rng = std::mt19937_64;

inline MatrixXd gaussian(Rng& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> n;
  MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = n(rng);
  return m;
}

inline VectorXd gaussian_vec(Rng& rng, Eigen::Index n) { return gaussian(rng, n, 1).col(0); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Q1 * diag(s) * Q2 with s in [0.5, 2]: condition number at most 4.
inline MatrixXd random_invertible(Rng& rng, Eigen::Index m) {
  const MatrixXd q1 = gaussian(rng, m, m).householderQr().householderQ();
  const MatrixXd q2 = gaussian(rng, m, m).householderQr().householderQ();
  VectorXd s(m);
  for (Eigen::Index i = 0; i < m; ++i) s(i) = uniform(rng, 0.5, 2.0);
  return q1 * s.asDiagonal() * q2;
}

/// Strictly positive definite covariance.
inline MatrixXd random_spd(Rng& rng, Eigen::Index d) {
  const MatrixXd a = gaussian(rng, d, d);
  MatrixXd s = a * a.transpose() / double(d) + 0.5 * MatrixXd::Identity(d, d);
  return (s + s.transpose()) / 2.0;
}

/// H (m x d, possibly rank deficient) with y = H b for a random b.
inline LinearHypothesis<double> random_consistent(Rng& rng, Eigen::Index d) {
  const Eigen::Index m = uniform_int(rng, 1, static_cast<int>(d));
  MatrixXd h = gaussian(rng, m, d);
  if (m > 1 && uniform_int(rng, 0, 3) == 0) h.row(m - 1) = h.row(0) * 2.0 - h.row(1) * 3.0;
  return {h, h * gaussian_vec(rng, d)};
}

/// Same solution set: invertible row mixing, then optionally appended dependent
/// rows, an appended zero row, and a row shuffle.
inline LinearHypothesis<double> equivalent_variant(Rng& rng, const LinearHypothesis<double>& h) {
  const MatrixXd g = random_invertible(rng, h.rows());
  MatrixXd hh = g * h.H();
  VectorXd yy = g * h.y();
  const int extra = uniform_int(rng, 0, 2);
  for (int e = 0; e < extra; ++e) {
    VectorXd c = VectorXd::Zero(hh.rows());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = uniform_int(rng, -2, 2);
    MatrixXd h2(hh.rows() + 1, hh.cols());
    h2 << hh, c.transpose() * hh;
    VectorXd y2(yy.size() + 1);
    y2 << yy, c.dot(yy);
    hh = std::move(h2);
    yy = std::move(y2);
  }
  if (uniform_int(rng, 0, 2) == 0) {
    MatrixXd h2(hh.rows() + 1, hh.cols());
    h2 << hh, MatrixXd::Zero(1, hh.cols());
    VectorXd y2(yy.size() + 1);
    y2 << yy, 0.0;
    hh = std::move(h2);
    yy = std::move(y2);
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(hh.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  MatrixXd hs(hh.rows(), hh.cols());
  VectorXd ys(yy.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    hs.row(static_cast<Eigen::Index>(i)) = hh.row(order[i]);
    ys(static_cast<Eigen::Index>(i)) = yy(order[i]);
  }
  return {hs, ys};
}

/// Solution set {x0 + N z} of H x = y parametrized through the pseudo-inverse.
struct SolutionSet {
  bool consistent;
  VectorXd x0;
  MatrixXd null_basis;  // columns of I - H^+ H
};

inline double membership_residual(const LinearHypothesis<double>& h, const VectorXd& x) {
  return (h.H() * x - h.y()).norm() / (1.0 + h.H().norm() * x.norm() + h.y().norm());
}

inline SolutionSet solve_by_pinv(const LinearHypothesis<double>& h) {
  const MatrixXd hp = pinv(h.H());
  const VectorXd x0 = hp * h.y();
  const MatrixXd nb = MatrixXd::Identity(h.dim(), h.dim()) - hp * h.H();
  return {membership_residual(h, x0) <= 1e-8, x0, nb};
}

// Every point of the affine set spanned by S1 lies in the solution set of h2.
inline bool contained(const SolutionSet& s1, const LinearHypothesis<double>& h2, Rng& rng) {
  if (membership_residual(h2, s1.x0) > 1e-8) return false;
  for (Eigen::Index i = 0; i < s1.null_basis.cols(); ++i)
    if (membership_residual(h2, s1.x0 + s1.null_basis.col(i)) > 1e-8) return false;
  for (int k = 0; k < 3; ++k)
    if (membership_residual(h2, s1.x0 + s1.null_basis * gaussian_vec(rng, s1.null_basis.cols())) > 1e-8)
      return false;
  return true;
}

inline Equivalence oracle_equivalence(const LinearHypothesis<double>& h1, const LinearHypothesis<double>& h2,
                                      Rng& rng) {
  const auto s1 = solve_by_pinv(h1), s2 = solve_by_pinv(h2);
  if (!s1.consistent && !s2.consistent) return Equivalence::both_inconsistent;
  if (!s1.consistent) return Equivalence::inconsistent_left;
  if (!s2.consistent) return Equivalence::inconsistent_right;
  return contained(s1, h2, rng) && contained(s2, h1, rng) ? Equivalence::equivalent : Equivalence::not_equivalent;
}

/// |a - b| / (1 + |a|)
inline double rel_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a)); }

inline MatrixXd centering3() {
  MatrixXd c(3, 3);
  c << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  return c / 3.0;
}

}  // namespace wald::testing

#endif  // WALD_TESTS_SUPPORT_HPP
