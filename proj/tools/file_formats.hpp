// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

// Matrix and factorization file I/O for the CLI. Independent of the library
// proper: everything crosses into libsrlu as raw buffers.
namespace srlucli {

/// File could not be opened/read/written.
struct FileIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File opened but its contents are malformed.
struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadedMatrix {
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<double> data;  // row-major
};

/// Sniffs the format: a leading "%%MatrixMarket" banner selects Matrix Market
/// (coordinate or array, real, general or symmetric); anything else parses as
/// headerless CSV. Rejects non-finite values.
LoadedMatrix load_matrix_file(const std::string& path);

/// Dense Matrix Market "array real general" writer (column-major entry order
/// per the format). Values print in shortest round-trip form.
void save_matrix_market_array(const std::string& path, std::uint64_t rows, std::uint64_t cols,
                              const std::vector<double>& row_major);

void save_csv(const std::string& path, std::uint64_t rows, std::uint64_t cols,
              const std::vector<double>& row_major);

/// Binary factorization container:
///   magic "SRLU1" (5 bytes), then little-endian u64 m, n, k, b,
///   pi1 (m u64), pi2 (n u64), lhat (m*k doubles, row-major), uhat (k*n),
///   and a trailing u64 checksum: the sum of all payload bytes (everything
///   between magic and checksum) mod 2^64.
struct FactorFileData {
  std::uint64_t m = 0, n = 0, k = 0, b = 0;
  std::vector<std::uint64_t> pi1, pi2;
  std::vector<double> lhat, uhat;
};

void save_factor_file(const std::string& path, const FactorFileData& data);
FactorFileData load_factor_file(const std::string& path);

/// P1 (ASCII) portable bitmap; pred(i, j) marks set pixels.
void write_pbm(const std::string& path, std::uint64_t rows, std::uint64_t cols,
               const std::function<bool(std::uint64_t, std::uint64_t)>& pred);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace srlucli
