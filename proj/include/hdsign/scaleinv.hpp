#pragma once

#include "hdsign/signcore.hpp"

namespace hdsign {

/// Per-coordinate scale estimate D_ij computed without observations i and j.
struct DiagonalEstimate {
  Vector scales;         // strictly positive
  bool floored = false;  // some coordinate hit the constant-coordinate floor
};

/// How each leave-two-out diagonal is formed from the remaining n - 2 rows.
enum class DiagonalMethod {
  SampleVariance,  // unbiased variance about the leave-two-out mean
  SecondMoment,    // mean of squares about zero
};

/// All leave-two-out diagonals of a sample, produced on demand per pair by
/// downdating full-sample coordinate sums (O(p) per pair).
class LeaveTwoOutDiagonals {
 public:
  explicit LeaveTwoOutDiagonals(const SampleMatrix& x,
                                DiagonalMethod method = DiagonalMethod::SampleVariance);

  DiagonalEstimate operator()(Index i, Index j) const;

  Index n() const noexcept { return x_.rows(); }
  Index p() const noexcept { return x_.cols(); }
  DiagonalMethod method() const noexcept { return method_; }
  const Vector& floor() const noexcept { return floor_; }

 private:
  Matrix x_;
  DiagonalMethod method_;
  Vector shift_;     // full-sample coordinate mean, subtracted before summing
  Vector sum_;       // sum_k (x_k - shift)
  Vector sum_sq_;    // sum_k (x_k - shift)^2
  Vector floor_;     // eps_var per coordinate
};

struct ScaleInvariantResult {
  double statistic = 0.0;  // T_n
  VarianceEstimate variance;
  bool constant_coordinate = false;
};

/// T_n. Requires n >= 4.
double scalar_invariant_statistic(const SampleMatrix& x, const WeightFunction& k,
                                  DiagonalMethod method = DiagonalMethod::SampleVariance);

/// sigma_breve_n^2. For each pair the inner sign mean re-standardizes every
/// X_k with that pair's D_ij, so the cost is O(n^3 p).
VarianceEstimate scalar_invariant_variance(const SampleMatrix& x, const WeightFunction& k,
                                           DiagonalMethod method = DiagonalMethod::SampleVariance);

/// T_n and sigma_breve_n^2 in one sweep over pairs.
ScaleInvariantResult scalar_invariant_compute(const SampleMatrix& x, const WeightFunction& k,
                                              DiagonalMethod method = DiagonalMethod::SampleVariance);

TestOutcome run_scalar_invariant_test(const SampleMatrix& x, const WeightFunction& k, double alpha,
                                      DiagonalMethod method = DiagonalMethod::SampleVariance);

}  // namespace hdsign
