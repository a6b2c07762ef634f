#pragma once

#include "latdim/linalg.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace latdim::io {

// Binary Jacobian container, little-endian throughout:
//   "JMAT" | u32 version = 1 | u64 rows | u64 cols | rows*cols f64, row-major
inline constexpr std::uint32_t kJmatVersion = 1;

std::vector<std::uint8_t> encode_jmat(const Matrix& m);
Matrix decode_jmat(const std::vector<std::uint8_t>& bytes);

void write_jmat(const std::filesystem::path& path, const Matrix& m);
Matrix read_jmat(const std::filesystem::path& path);

// Comma-separated numbers, one matrix row per line; blank and '#' lines skipped.
Matrix read_matrix_csv(const std::filesystem::path& path);

// Reads .jmat by magic bytes, otherwise CSV.
Matrix read_matrix(const std::filesystem::path& path);

// Shortest form that round-trips: 17 significant digits.
std::string format_double(double x);

// Writes content via a sibling temp file and rename. An empty path writes to
// stdout instead.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text(const std::filesystem::path& path);

}  // namespace latdim::io
