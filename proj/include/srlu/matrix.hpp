// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "srlu/errors.hpp"

namespace srlu {

/// Dense row-major matrix of doubles. Column views are realized by explicit
/// copy (block()); there is no stride machinery. Empty shapes (0 rows or
/// columns) are permitted so block arithmetic degenerates gracefully.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of `entries` (row-major, length rows*cols). Rejects
  /// non-finite entries.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  /// Brace-literal constructor, mostly for tests: {{1,2},{3,4}}.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& m);
  void row_swap(std::size_t i, std::size_t j);
  void col_swap(std::size_t i, std::size_t j);
  DenseMatrix transposed() const;
  void scale(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Index map representing a permutation matrix: position i of the permuted
/// object holds element map[i] of the original.
class PermutationVector {
 public:
  PermutationVector() = default;

  /// Validates that `map` is a bijection on {0..n-1}.
  explicit PermutationVector(std::vector<std::size_t> map);

  static PermutationVector identity(std::size_t n);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator[](std::size_t i) const noexcept { return map_[i]; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }

  void swap_positions(std::size_t i, std::size_t j);
  PermutationVector inverse() const;

  bool operator==(const PermutationVector& o) const noexcept { return map_ == o.map_; }

 private:
  std::vector<std::size_t> map_;
};

/// out[i][:] = in[p[i]][:]
DenseMatrix permute_rows(const DenseMatrix& a, const PermutationVector& p);
/// out[:][j] = in[:][p[j]]
DenseMatrix permute_cols(const DenseMatrix& a, const PermutationVector& p);

enum class NormKind { frobenius, spectral, max };
enum class TriShape { lower_unit, upper };
enum class TriSide { left, right };

/// C = A*B. When `flops` is given, 2*m*t*n is added to it: the nominal
/// multiply-add flop count of the kernel (structural zero skips are a speed
/// optimization and do not reduce the count).
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, std::uint64_t* flops = nullptr);

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom);

double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);

/// Largest singular value by power iteration on A^T A with a deterministic
/// all-ones start, relative tolerance 1e-12, at most 5000 iterations.
/// Throws ConvergenceError (carrying the last gap) when it fails to settle.
double spectral_norm(const DenseMatrix& a);

double norm(const DenseMatrix& a, NormKind kind);

/// Solves T*X = B (left) or X*T = B (right) for triangular T. lower_unit
/// assumes an implicit unit diagonal; upper requires nonzero diagonals and
/// throws SingularFactorError with the offending index otherwise.
DenseMatrix tri_solve(const DenseMatrix& t, const DenseMatrix& b, TriShape shape,
                      TriSide side = TriSide::left);

namespace detail {
// Tile edge for the matmul kernel; sized so three tiles fit the default cache
// model of the tuning module (sqrt(M/3) words, clamped).
inline constexpr std::size_t kMatmulTile = 256;

/// w[r0:r1, c0:c1] -= w[r0:r1, q0:q1] * w[q0:q1, c0:c1]. The three regions
/// must not overlap. Adds the nominal 2*(r1-r0)*(q1-q0)*(c1-c0) to `flops`.
void schur_update_region(DenseMatrix& w, std::size_t r0, std::size_t r1, std::size_t c0,
                         std::size_t c1, std::size_t q0, std::size_t q1,
                         std::uint64_t* flops = nullptr);
}  // namespace detail

}  // namespace srlu
