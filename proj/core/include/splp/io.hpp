#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "splp/linalg.hpp"
#include "splp/mmsb.hpp"

namespace splp::io {

struct EdgeList {
  mmsb::WeightedGraph graph;
  /// names[i] is the label of node i, in order of first appearance.
  std::vector<std::string> names;
  /// Edges whose weight fell in (1, 2] and was clamped to 1.
  std::size_t clamped_weights = 0;
};

/// Lines "nameA nameB weight" separated by tabs or spaces. Blank lines and
/// lines starting with '#' are skipped. Duplicate and reversed edges keep the
/// larger weight; self-weights default to 1.
/// Throws ParseError on a malformed line, a weight outside [0, 2], or when no
/// edge is read.
EdgeList ingest_weighted_edgelist(std::istream& in);
EdgeList ingest_weighted_edgelist(const std::filesystem::path& path);

/// Comma separated, no header, %.17g, LF line endings.
void write_matrix_csv(std::ostream& out, const linalg::DenseMatrix& m);
void write_matrix_csv(const std::filesystem::path& path, const linalg::DenseMatrix& m);

/// Inverse of write_matrix_csv. Throws ParseError on ragged rows or bad numbers.
linalg::DenseMatrix read_matrix_csv(std::istream& in);
linalg::DenseMatrix read_matrix_csv(const std::filesystem::path& path);

/// %.17g
std::string format_double(double v);

}  // namespace splp::io
