#include "splp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "splp/error.hpp"

namespace splp::io {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t start = line.find_first_not_of(delims, pos);
    if (start == std::string_view::npos) break;
    std::size_t end = line.find_first_of(delims, start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

bool parse_double(std::string_view s, double& v) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

EdgeList ingest_weighted_edgelist(std::istream& in) {
  EdgeList out;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::pair<std::size_t, std::size_t>, double> weights;

  auto node = [&](std::string_view name) {
    auto [it, inserted] = index.emplace(std::string(name), out.names.size());
    if (inserted) out.names.emplace_back(name);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_fields(line, " \t");
    if (fields.empty() || fields[0].front() == '#') continue;
    if (fields.size() != 3) throw ParseError("expected 'nameA nameB weight'", line_no);
    double w = 0.0;
    if (!parse_double(fields[2], w)) throw ParseError("bad weight '" + std::string(fields[2]) + "'", line_no);
    if (!(w >= 0.0 && w <= 2.0)) throw ParseError("weight outside [0, 2]", line_no);
    if (w > 1.0) {
      w = 1.0;
      ++out.clamped_weights;
    }
    std::size_t a = node(fields[0]);
    std::size_t b = node(fields[1]);
    if (a > b) std::swap(a, b);
    auto [it, inserted] = weights.emplace(std::make_pair(a, b), w);
    if (!inserted) it->second = std::max(it->second, w);
  }
  if (weights.empty()) throw ParseError("no edges", 0);

  const std::size_t n = out.names.size();
  out.graph.adj = linalg::DenseMatrix(n, n);
  out.graph.kind = mmsb::GraphKind::sampled_average;
  for (std::size_t i = 0; i < n; ++i) out.graph.adj(i, i) = 1.0;
  for (const auto& [key, w] : weights) {
    out.graph.adj(key.first, key.second) = w;
    out.graph.adj(key.second, key.first) = w;
  }
  return out;
}

EdgeList ingest_weighted_edgelist(const std::filesystem::path& path) {
  auto in = open_input(path);
  return ingest_weighted_edgelist(in);
}

void write_matrix_csv(std::ostream& out, const linalg::DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const linalg::DenseMatrix& m) {
  auto out = open_output(path);
  write_matrix_csv(out, m);
  if (!out) throw Error("write failed: " + path.string());
}

linalg::DenseMatrix read_matrix_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t count = 0;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t end = line.find(',', pos);
      const std::string_view field(line.data() + pos, (end == std::string::npos ? line.size() : end) - pos);
      double v = 0.0;
      if (!parse_double(field, v)) throw ParseError("bad number '" + std::string(field) + "'", line_no);
      values.push_back(v);
      ++count;
      if (end == std::string::npos) break;
      pos = end + 1;
    }
    if (rows == 0) cols = count;
    else if (count != cols) throw ParseError("ragged row", line_no);
    ++rows;
  }
  if (rows == 0) throw ParseError("empty matrix", 0);
  return linalg::DenseMatrix(rows, cols, std::move(values));
}

linalg::DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix_csv(in);
}

}  // namespace splp::io
