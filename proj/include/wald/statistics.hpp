#ifndef WALD_STATISTICS_HPP
#define WALD_STATISTICS_HPP

#include <string_view>

#include "wald/hypothesis.hpp"

namespace wald {

enum class StatisticKind { wts, mats, ats, ats_s };

constexpr std::string_view to_string(StatisticKind k) {
  switch (k) {
    case StatisticKind::wts: return "WTS";
    case StatisticKind::mats: return "MATS";
    case StatisticKind::ats: return "ATS";
    case StatisticKind::ats_s: return "ATS_s";
  }
  return "unknown";
}

template <typename Scalar>
struct StatisticResult {
  StatisticKind kind;
  Scalar value;
  Eigen::Index m_effective;  // rows of H used
};

/// Statistic vector T, its covariance Sigma (symmetric PSD) and sample size N.
template <typename Scalar>
class StatisticInput {
 public:
  StatisticInput(Vec<Scalar> t, Mat<Scalar> sigma, Scalar n) : t_(std::move(t)), sigma_(std::move(sigma)), n_(n) {
    require_finite(t_, "statistic vector");
    require_finite(sigma_, "covariance");
    if (!(n_ > Scalar(0)) || !std::isfinite(static_cast<double>(n_)))
      throw InvalidArgument("sample size must be positive");
    if (sigma_.rows() != sigma_.cols()) throw InvalidArgument("covariance must be square");
    if (sigma_.rows() != t_.size())
      throw InvalidArgument("covariance is " + std::to_string(sigma_.rows()) + "x" + std::to_string(sigma_.cols()) +
                            " but the statistic vector has length " + std::to_string(t_.size()));
    const Scalar scale = sigma_.norm();
    if ((sigma_ - sigma_.transpose()).norm() > Scalar(1e-10) * scale)
      throw InvalidArgument("covariance is not symmetric");
    if (t_.size() > 0) {
      const Mat<Scalar> sym = (sigma_ + sigma_.transpose()) / Scalar(2);
      Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(sym, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver failed on covariance");
      if (es.eigenvalues()(0) < -Scalar(1e-10) * scale)
        throw InvalidArgument("covariance is not positive semi-definite");
    }
  }

  const Vec<Scalar>& T() const { return t_; }
  const Mat<Scalar>& Sigma() const { return sigma_; }
  Scalar N() const { return n_; }

 private:
  Vec<Scalar> t_;
  Mat<Scalar> sigma_;
  Scalar n_;
};

namespace detail {

template <typename Scalar>
void check_dims(const LinearHypothesis<Scalar>& h, Eigen::Index d) {
  if (h.dim() != d)
    throw InvalidArgument("hypothesis has " + std::to_string(h.dim()) + " columns but the statistic has dimension " +
                          std::to_string(d));
}

// Quadratic forms with PSD kernels: round-off negatives down to -1e-9 become 0.
template <typename Scalar>
Scalar clamp_quadratic(Scalar v) {
  if (!(v >= Scalar(-1e-9))) throw NumericError("quadratic form evaluated to a negative or non-finite value");
  return v < Scalar(0) ? Scalar(0) : v;
}

template <typename Scalar>
Vec<Scalar> residual(const LinearHypothesis<Scalar>& h, const Vec<Scalar>& t) {
  return h.H() * t - h.y();
}

}  // namespace detail

/// N * r^T (H Sigma H^T)^+ r with r = H T - y.
template <typename Scalar>
StatisticResult<Scalar> wts(const LinearHypothesis<Scalar>& h, const StatisticInput<Scalar>& in,
                            const Tolerance<Scalar>& tol = {}) {
  detail::check_dims(h, in.T().size());
  const Vec<Scalar> r = detail::residual(h, in.T());
  const Mat<Scalar> kernel = h.H() * in.Sigma() * h.H().transpose();
  const Scalar q = r.dot(pinv(kernel, tol) * r);
  return {StatisticKind::wts, detail::clamp_quadratic(in.N() * q), h.rows()};
}

/// r^T (H Sigma_0 H^T)^+ r, Sigma_0 the diagonal of Sigma. No N factor.
template <typename Scalar>
StatisticResult<Scalar> mats(const LinearHypothesis<Scalar>& h, const StatisticInput<Scalar>& in,
                             const Tolerance<Scalar>& tol = {}) {
  detail::check_dims(h, in.T().size());
  const Vec<Scalar> diag = in.Sigma().diagonal();
  if (diag.size() && !(diag.minCoeff() > Scalar(0)))
    throw InvalidArgument("MATS needs a strictly positive covariance diagonal");
  const Vec<Scalar> r = detail::residual(h, in.T());
  const Mat<Scalar> kernel = h.H() * diag.asDiagonal() * h.H().transpose();
  return {StatisticKind::mats, detail::clamp_quadratic(r.dot(pinv(kernel, tol) * r)), h.rows()};
}

/// N * ||H T - y||^2
template <typename Scalar>
StatisticResult<Scalar> ats(const LinearHypothesis<Scalar>& h, const Vec<Scalar>& t, Scalar n) {
  detail::check_dims(h, t.size());
  require_finite(t, "statistic vector");
  if (!(n > Scalar(0))) throw InvalidArgument("sample size must be positive");
  return {StatisticKind::ats, n * detail::residual(h, t).squaredNorm(), h.rows()};
}

template <typename Scalar>
Scalar kernel_trace(const LinearHypothesis<Scalar>& h, const Mat<Scalar>& sigma) {
  return (h.H() * sigma * h.H().transpose()).trace();
}

/// ATS divided by tr(H Sigma H^T).
template <typename Scalar>
StatisticResult<Scalar> ats_standardized(const LinearHypothesis<Scalar>& h, const StatisticInput<Scalar>& in,
                                         const Tolerance<Scalar>& tol = {}) {
  const auto a = ats(h, in.T(), in.N());
  const Scalar tr = kernel_trace(h, in.Sigma());
  const Scalar scale = h.H().squaredNorm() * in.Sigma().norm();
  if (!(tr > tol.cutoff(h.rows(), h.dim(), scale)))
    throw InvalidArgument("tr(H Sigma H^T) vanishes; standardized ATS undefined");
  return {StatisticKind::ats_s, a.value / tr, h.rows()};
}

template <typename Scalar>
StatisticResult<Scalar> evaluate(StatisticKind kind, const LinearHypothesis<Scalar>& h,
                                 const StatisticInput<Scalar>& in, const Tolerance<Scalar>& tol = {}) {
  switch (kind) {
    case StatisticKind::wts: return wts(h, in, tol);
    case StatisticKind::mats: return mats(h, in, tol);
    case StatisticKind::ats: return ats(h, in.T(), in.N());
    case StatisticKind::ats_s: return ats_standardized(h, in, tol);
  }
  throw InvalidArgument("unknown statistic kind");
}

/// WTS with (H Sigma H^T)^+ factored once, for repeated evaluation at many T.
/// Immutable after construction.
template <typename Scalar>
class WtsKernel {
 public:
  WtsKernel(LinearHypothesis<Scalar> h, const Mat<Scalar>& sigma, const Tolerance<Scalar>& tol = {})
      : h_(std::move(h)) {
    if (sigma.rows() != h_.dim() || sigma.cols() != h_.dim())
      throw InvalidArgument("covariance does not match hypothesis dimension");
    const Mat<Scalar> kernel = h_.H() * sigma * h_.H().transpose();
    kernel_pinv_ = pinv(kernel, tol);
  }

  StatisticResult<Scalar> operator()(const Vec<Scalar>& t, Scalar n) const {
    detail::check_dims(h_, t.size());
    const Vec<Scalar> r = detail::residual(h_, t);
    return {StatisticKind::wts, detail::clamp_quadratic(n * r.dot(kernel_pinv_ * r)), h_.rows()};
  }

  const LinearHypothesis<Scalar>& hypothesis() const { return h_; }

 private:
  LinearHypothesis<Scalar> h_;
  Mat<Scalar> kernel_pinv_;
};

/// Row-wise upper-triangular vectorization (v11, ..., v1p, v22, ..., vpp).
template <typename Derived>
Vec<typename Derived::Scalar> vech_upper(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  require_finite(v);
  if (v.rows() != v.cols()) throw InvalidArgument("vech needs a square matrix");
  if ((v - v.transpose()).norm() > Scalar(1e-10) * v.norm()) throw InvalidArgument("vech needs a symmetric matrix");
  const Eigen::Index p = v.rows();
  Vec<Scalar> out(p * (p + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i; j < p; ++j) out(k++) = v(i, j);
  return out;
}

/// h_p: ones exactly at the diagonal positions of vech order, so h_p . vech(V) = tr(V).
template <typename Scalar = double>
Vec<Scalar> diag_selector(Eigen::Index p) {
  if (p < 1) throw InvalidArgument("diag_selector needs p >= 1");
  Vec<Scalar> h = Vec<Scalar>::Zero(p * (p + 1) / 2);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < p; ++i) {
    h(pos) = Scalar(1);
    pos += p - i;
  }
  return h;
}

/// Unbiased sample covariance of the rows of X (one observation per row).
template <typename Derived>
Mat<typename Derived::Scalar> sample_covariance(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  require_finite(x, "observations");
  if (x.rows() < 2) throw InvalidArgument("sample covariance needs at least 2 observations");
  const Mat<Scalar> centered = x.rowwise() - x.colwise().mean();
  const Mat<Scalar> s = centered.transpose() * centered / Scalar(x.rows() - 1);
  return (s + s.transpose()) / Scalar(2);
}

}  // namespace wald

#endif  // WALD_STATISTICS_HPP
