#pragma once

#include "hdsign/sample_matrix.hpp"
#include "hdsign/weight.hpp"

namespace hdsign {

/// Norms at or below this are treated as zero when taking spatial signs.
double zero_norm_threshold(Index p);

/// x / ||x||, or the zero vector when ||x|| <= zero_norm_threshold(p).
Vector spatial_sign(const Eigen::Ref<const Vector>& x);

/// Per-row spatial signs U_i and weights K(r_i).
///
/// Rows whose norm is at or below the zero threshold get U_i = 0 and weight 0
/// (K is not evaluated there). Throws NonFiniteWeight if K(r_i) is inf or nan
/// for any other row.
struct WeightedSigns {
  Matrix signs;    // n x p
  Vector radii;    // r_i = ||X_i||
  Vector weights;  // K(r_i), 0 for zero rows

  static WeightedSigns compute(const Matrix& x, const WeightFunction& k);
};

struct VarianceEstimate {
  double value = 0.0;    // clamped at 0
  bool clamped = false;  // round-off made the raw sum negative

  bool degenerate() const noexcept { return !(value > 0.0); }
};

struct TestOutcome {
  double statistic = 0.0;
  double sigma_hat = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  bool constant_coordinate = false;  // scalar-invariant test only
};

/// W_n = 2/(n(n-1)) sum_{i<j} K(r_i)K(r_j) U_i'U_j, computed as
/// (||sum V_i||^2 - sum ||V_i||^2) / (n(n-1)) with V_i = K(r_i) U_i.
double weighted_sign_statistic(const SampleMatrix& x, const WeightFunction& k);
double weighted_sign_statistic(const WeightedSigns& ws);

/// sigma_hat_n^2 for W_n. Requires n >= 3. The leave-two-out sign means are
/// downdated from the full sign sum through the Gram matrix, so the cost is
/// O(n^2 p).
VarianceEstimate variance_estimator(const SampleMatrix& x, const WeightFunction& k);
VarianceEstimate variance_estimator(const WeightedSigns& ws);

/// One-sided test: reject when W_n / sigma_hat_n > z_alpha.
/// Throws DegenerateVariance when sigma_hat_n^2 == 0.
TestOutcome run_test(const SampleMatrix& x, const WeightFunction& k, double alpha);

/// Builds a TestOutcome from a statistic and its variance estimate.
TestOutcome assemble_outcome(double statistic, const VarianceEstimate& var, double alpha);

void require_alpha(double alpha);

}  // namespace hdsign
