#pragma once

#include <Eigen/Dense>

namespace hdsign {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// An n x p block of observations, one observation per row.
///
/// Construction rejects empty or non-finite data. Minimum row counts are
/// operation-specific (the variance estimators need n >= 3, the
/// scalar-invariant statistic n >= 4) and are checked where they apply.
class SampleMatrix {
 public:
  explicit SampleMatrix(Matrix data);

  const Matrix& data() const noexcept { return data_; }
  Index n() const noexcept { return data_.rows(); }
  Index p() const noexcept { return data_.cols(); }
  auto row(Index i) const { return data_.row(i); }

  /// Rows shifted by -theta0, for testing H0: theta = theta0.
  SampleMatrix centered_at(const Vector& theta0) const;

  /// Every entry multiplied by c.
  SampleMatrix scaled(double c) const;

 private:
  Matrix data_;
};

void require_rows(const SampleMatrix& x, Index minimum, const char* what);

}  // namespace hdsign
