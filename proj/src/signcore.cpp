#include "hdsign/signcore.hpp"

#include <cmath>
#include <sstream>

#include "hdsign/errors.hpp"
#include "hdsign/normal.hpp"

namespace hdsign {

double zero_norm_threshold(Index p) { return 1e-12 * std::sqrt(static_cast<double>(p)); }

Vector spatial_sign(const Eigen::Ref<const Vector>& x) {
  const double norm = x.norm();
  if (norm <= zero_norm_threshold(x.size())) return Vector::Zero(x.size());
  return x / norm;
}

WeightedSigns WeightedSigns::compute(const Matrix& x, const WeightFunction& k) {
  const Index n = x.rows();
  const double eps = zero_norm_threshold(x.cols());
  WeightedSigns ws;
  ws.radii = x.rowwise().norm();
  ws.signs = Matrix::Zero(n, x.cols());
  ws.weights = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double r = ws.radii(i);
    if (r <= eps) continue;
    const double w = k(r);
    if (!std::isfinite(w)) {
      std::ostringstream msg;
      msg << "weight " << k.name() << " is not finite at r = " << r << " (row " << i + 1 << ")";
      throw NonFiniteWeight(msg.str());
    }
    ws.signs.row(i) = x.row(i) / r;
    ws.weights(i) = w;
  }
  return ws;
}

double weighted_sign_statistic(const WeightedSigns& ws) {
  const Index n = ws.signs.rows();
  if (n < 2) throw InvalidInput("weighted sign statistic: n must be at least 2");
  const Matrix v = ws.weights.asDiagonal() * ws.signs;
  const double total = v.colwise().sum().squaredNorm();
  const double diag = v.squaredNorm();
  return (total - diag) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double weighted_sign_statistic(const SampleMatrix& x, const WeightFunction& k) {
  return weighted_sign_statistic(WeightedSigns::compute(x.data(), k));
}

VarianceEstimate variance_estimator(const WeightedSigns& ws) {
  const Index n = ws.signs.rows();
  if (n < 3) throw InvalidInput("variance estimator: n must be at least 3");
  const Matrix gram = ws.signs * ws.signs.transpose();
  // s_j = S_U' U_j with S_U the full sign sum
  const Vector s = gram.colwise().sum().transpose();
  const Vector w2 = ws.weights.array().square();
  const double inv_m = 1.0 / static_cast<double>(n - 2);

  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (w2(i) == 0.0) continue;
    for (Index j = i + 1; j < n; ++j) {
      if (w2(j) == 0.0) continue;
      const double g = gram(i, j);
      // (U_i - u_ij)'U_j and (U_j - u_ij)'U_i with u_ij = (S_U - U_i - U_j)/(n-2)
      const double a = g - (s(j) - g - gram(j, j)) * inv_m;
      const double b = g - (s(i) - g - gram(i, i)) * inv_m;
      sum += w2(i) * w2(j) * a * b;
    }
  }
  // the summand is symmetric in (i, j); the i != j sum is twice the i < j sum
  const double nd = static_cast<double>(n);
  const double raw = 4.0 * sum / (nd * nd * nd * nd);
  VarianceEstimate out;
  if (raw < 0.0) {
    out.clamped = true;
    out.value = 0.0;
  } else {
    out.value = raw;
  }
  return out;
}

VarianceEstimate variance_estimator(const SampleMatrix& x, const WeightFunction& k) {
  require_rows(x, 3, "variance estimator");
  return variance_estimator(WeightedSigns::compute(x.data(), k));
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
}

TestOutcome assemble_outcome(double statistic, const VarianceEstimate& var, double alpha) {
  require_alpha(alpha);
  if (var.degenerate()) {
    throw DegenerateVariance("variance estimate is zero; z and p-value are undefined");
  }
  TestOutcome t;
  t.statistic = statistic;
  t.sigma_hat = std::sqrt(var.value);
  t.z = statistic / t.sigma_hat;
  t.p_value = normal_sf(t.z);
  t.alpha = alpha;
  t.reject = t.z > normal_upper_quantile(alpha);
  return t;
}

TestOutcome run_test(const SampleMatrix& x, const WeightFunction& k, double alpha) {
  require_alpha(alpha);
  require_rows(x, 3, "test");
  const WeightedSigns ws = WeightedSigns::compute(x.data(), k);
  return assemble_outcome(weighted_sign_statistic(ws), variance_estimator(ws), alpha);
}

}  // namespace hdsign
