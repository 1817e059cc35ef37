#pragma once

// Matrix and vector interchange files.
//
// CSV: one row per line, comma-separated values, no header.
// Binary: 16-byte header (8-byte magic "WLPMAT01", uint32 rows, uint32 cols,
// little-endian) followed by rows*cols little-endian float64 in row-major order.
// Readers detect the binary form from its magic.

#include "wlp/core.hpp"

#include <filesystem>
#include <stdexcept>

namespace wlp {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kMatrixMagic[8] = {'W', 'L', 'P', 'M', 'A', 'T', '0', '1'};

Matrix read_matrix(const std::filesystem::path& path);
// A single row or a single column is read as a vector.
Vector read_vector(const std::filesystem::path& path);

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
void write_matrix_binary(const std::filesystem::path& path, const Matrix& m);
// One value per line.
void write_vector_csv(const std::filesystem::path& path, const Vector& v);

// 1-based indices separated by commas, whitespace or newlines.
SupportEstimate read_support(const std::filesystem::path& path, Index dim);
void write_support(const std::filesystem::path& path, const SupportEstimate& s);

}  // namespace wlp
