#include "hdsign/scaleinv.hpp"

#include <cmath>
#include <sstream>

#include "hdsign/errors.hpp"

namespace hdsign {

LeaveTwoOutDiagonals::LeaveTwoOutDiagonals(const SampleMatrix& x, DiagonalMethod method)
    : x_(x.data()), method_(method) {
  require_rows(x, 4, "leave-two-out diagonals");
  const double n = static_cast<double>(x_.rows());
  shift_ = x_.colwise().mean().transpose();
  const Matrix centered = x_.rowwise() - shift_.transpose();
  sum_ = centered.colwise().sum().transpose();
  sum_sq_ = centered.array().square().colwise().sum().transpose();
  const Vector full_var = sum_sq_ / (n - 1.0);
  floor_ = full_var.unaryExpr([](double v) { return v > 0.0 ? 1e-12 * v : 1e-12; });
}

DiagonalEstimate LeaveTwoOutDiagonals::operator()(Index i, Index j) const {
  const Index n = x_.rows();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw InvalidInput("leave-two-out pair must be two distinct row indices");
  }
  if (j < i) std::swap(i, j);  // same rounding for (i, j) and (j, i)
  const double m = static_cast<double>(n - 2);
  const auto yi = x_.row(i).transpose() - shift_;
  const auto yj = x_.row(j).transpose() - shift_;
  const Vector s = sum_ - yi - yj;
  const Vector q = sum_sq_ - yi.cwiseAbs2() - yj.cwiseAbs2();

  DiagonalEstimate d;
  if (method_ == DiagonalMethod::SampleVariance) {
    d.scales = (q - s.cwiseAbs2() / m) / (m - 1.0);
  } else {
    d.scales = (q + 2.0 * shift_.cwiseProduct(s) + m * shift_.cwiseAbs2()) / m;
  }
  for (Index k = 0; k < d.scales.size(); ++k) {
    if (!(d.scales(k) > floor_(k))) {
      d.scales(k) = floor_(k);
      d.floored = true;
    }
  }
  return d;
}

namespace {

struct Standardized {
  Vector sign;
  double weight = 0.0;
};

Standardized standardize(const Eigen::Ref<const Vector>& x, const Vector& inv_sd,
                         const WeightFunction& k, double eps) {
  Standardized out;
  Vector y = x.cwiseProduct(inv_sd);
  const double r = y.norm();
  if (r <= eps) {
    out.sign = Vector::Zero(x.size());
    return out;
  }
  out.weight = k(r);
  if (!std::isfinite(out.weight)) {
    std::ostringstream msg;
    msg << "weight " << k.name() << " is not finite at standardized radius " << r;
    throw NonFiniteWeight(msg.str());
  }
  out.sign = y / r;
  return out;
}

ScaleInvariantResult compute(const SampleMatrix& sample, const WeightFunction& k,
                             DiagonalMethod method, bool with_variance) {
  const LeaveTwoOutDiagonals diagonals(sample, method);
  const Matrix& x = sample.data();
  const Index n = x.rows();
  const double eps = zero_norm_threshold(x.cols());
  const double inv_m = 1.0 / static_cast<double>(n - 2);

  ScaleInvariantResult res;
  double stat_sum = 0.0;
  double var_sum = 0.0;
  Matrix signs(n, x.cols());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const DiagonalEstimate d = diagonals(i, j);
      res.constant_coordinate = res.constant_coordinate || d.floored;
      const Vector inv_sd = d.scales.cwiseSqrt().cwiseInverse();
      const Standardized si = standardize(x.row(i).transpose(), inv_sd, k, eps);
      const Standardized sj = standardize(x.row(j).transpose(), inv_sd, k, eps);
      const double g = si.sign.dot(sj.sign);
      stat_sum += si.weight * sj.weight * g;
      if (!with_variance) continue;

      // every row re-standardized by this pair's D_ij
      const Matrix y = x * inv_sd.asDiagonal();
      const Vector norms = y.rowwise().norm();
      for (Index r = 0; r < n; ++r) {
        if (norms(r) <= eps) {
          signs.row(r).setZero();
        } else {
          signs.row(r) = y.row(r) / norms(r);
        }
      }
      const Vector total = signs.colwise().sum().transpose();
      const Vector rest = total - si.sign - sj.sign;  // (n-2) * u_tilde_ij
      const double a = g - rest.dot(sj.sign) * inv_m;
      const double b = g - rest.dot(si.sign) * inv_m;
      const double wi2 = si.weight * si.weight;
      const double wj2 = sj.weight * sj.weight;
      var_sum += wi2 * wj2 * a * b;
    }
  }
  const double nd = static_cast<double>(n);
  res.statistic = 2.0 * stat_sum / (nd * (nd - 1.0));
  if (with_variance) {
    const double raw = 4.0 * var_sum / (nd * nd * nd * nd);
    res.variance.clamped = raw < 0.0;
    res.variance.value = raw < 0.0 ? 0.0 : raw;
  }
  return res;
}

}  // namespace

double scalar_invariant_statistic(const SampleMatrix& x, const WeightFunction& k,
                                  DiagonalMethod method) {
  return compute(x, k, method, false).statistic;
}

VarianceEstimate scalar_invariant_variance(const SampleMatrix& x, const WeightFunction& k,
                                           DiagonalMethod method) {
  return compute(x, k, method, true).variance;
}

ScaleInvariantResult scalar_invariant_compute(const SampleMatrix& x, const WeightFunction& k,
                                              DiagonalMethod method) {
  return compute(x, k, method, true);
}

TestOutcome run_scalar_invariant_test(const SampleMatrix& x, const WeightFunction& k,
                                      double alpha, DiagonalMethod method) {
  require_alpha(alpha);
  const ScaleInvariantResult res = compute(x, k, method, true);
  TestOutcome out = assemble_outcome(res.statistic, res.variance, alpha);
  out.constant_coordinate = res.constant_coordinate;
  return out;
}

}  // namespace hdsign
