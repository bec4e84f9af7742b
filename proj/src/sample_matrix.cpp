#include "hdsign/sample_matrix.hpp"

#include <string>

#include "hdsign/errors.hpp"

namespace hdsign {

SampleMatrix::SampleMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() < 1 || data_.cols() < 1) throw InvalidInput("sample matrix is empty");
  if (!data_.allFinite()) throw InvalidInput("sample matrix has non-finite entries");
}

SampleMatrix SampleMatrix::centered_at(const Vector& theta0) const {
  if (theta0.size() != p()) {
    throw InvalidInput("theta0 has length " + std::to_string(theta0.size()) + ", expected " +
                       std::to_string(p()));
  }
  return SampleMatrix(data_.rowwise() - theta0.transpose());
}

SampleMatrix SampleMatrix::scaled(double c) const { return SampleMatrix(data_ * c); }

void require_rows(const SampleMatrix& x, Index minimum, const char* what) {
  if (x.n() < minimum) {
    throw InvalidInput(std::string(what) + ": n must be at least " + std::to_string(minimum) +
                       " (got " + std::to_string(x.n()) + ")");
  }
}

}  // namespace hdsign
