#pragma once

#include <iosfwd>
#include <string>

#include "hdsign/sample_matrix.hpp"

namespace hdsign {

/// Reads an n x p numeric CSV (comma-separated, optionally quoted fields,
/// blank lines ignored). With `header`, the first line is skipped.
/// Throws InvalidInput naming the 1-based line and column of the first
/// malformed cell or ragged row.
SampleMatrix read_csv(std::istream& in, bool header = false);
SampleMatrix read_csv_file(const std::string& path, bool header = false);

/// Writes rows with shortest round-trip formatting, so read_csv(write_csv(x))
/// reproduces x bit for bit.
void write_csv(std::ostream& out, const Matrix& x);
void write_csv_file(const std::string& path, const Matrix& x);

}  // namespace hdsign
