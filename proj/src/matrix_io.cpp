#include "wlp/matrix_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace wlp {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Matrix parse_binary(const std::vector<char>& bytes, const std::filesystem::path& path) {
  if (bytes.size() < 16) throw IoError(path.string() + ": truncated header");
  auto u32 = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[off + i])) << (8 * i);
    return v;
  };
  const std::uint32_t rows = u32(8);
  const std::uint32_t cols = u32(12);
  const std::size_t count = static_cast<std::size_t>(rows) * cols;
  if (bytes.size() != 16 + 8 * count)
    throw IoError(path.string() + ": payload size does not match " + std::to_string(rows) + "x" +
                  std::to_string(cols));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t raw = 0;
    for (int b = 0; b < 8; ++b)
      raw |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[16 + 8 * i + b])) << (8 * b);
    double v;
    std::memcpy(&v, &raw, sizeof v);
    m(static_cast<Index>(i / cols), static_cast<Index>(i % cols)) = v;
  }
  return m;
}

Matrix parse_csv(const std::vector<char>& bytes, const std::filesystem::path& path) {
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path.string() + ": empty matrix file");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

Matrix read_matrix(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kMatrixMagic, 8) == 0) return parse_binary(bytes, path);
  return parse_csv(bytes, path);
}

Vector read_vector(const std::filesystem::path& path) {
  const Matrix m = read_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw IoError(path.string() + ": expected a single row or column");
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
  std::string text;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) text += ',';
      text += num(m(r, c));
    }
    text += '\n';
  }
  write_text(path, text);
}

void write_matrix_binary(const std::filesystem::path& path, const Matrix& m) {
  std::string bytes(kMatrixMagic, 8);
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>(v >> (8 * i)));
  };
  put32(static_cast<std::uint32_t>(m.rows()));
  put32(static_cast<std::uint32_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      std::uint64_t raw;
      std::memcpy(&raw, &v, sizeof raw);
      for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<char>(raw >> (8 * b)));
    }
  }
  write_text(path, bytes);
}

void write_vector_csv(const std::filesystem::path& path, const Vector& v) {
  std::string text;
  for (Index i = 0; i < v.size(); ++i) text += num(v[i]) + '\n';
  write_text(path, text);
}

SupportEstimate read_support(const std::filesystem::path& path, Index dim) {
  const auto bytes = slurp(path);
  std::string text(bytes.begin(), bytes.end());
  for (char& ch : text)
    if (ch == ',') ch = ' ';
  std::istringstream in(text);
  std::vector<Index> indices;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      indices.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw IoError(path.string() + ": bad index '" + token + "'");
    }
  }
  try {
    return SupportEstimate::from_one_based(indices, dim);
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_support(const std::filesystem::path& path, const SupportEstimate& s) {
  std::string text;
  for (Index i : s.one_based()) text += std::to_string(i) + '\n';
  write_text(path, text);
}

}  // namespace wlp
