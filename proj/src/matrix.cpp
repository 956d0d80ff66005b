// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace srlu {

namespace {

void check_finite(const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw NumericError("non-finite matrix entry at flat index " + std::to_string(i));
    }
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  check_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged initializer rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  check_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows,
                               std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw ShapeError("block out of range");
  DenseMatrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    const double* src = data_.data() + (r0 + i) * cols_ + c0;
    std::copy(src, src + ncols, out.data_.data() + i * ncols);
  }
  return out;
}

void DenseMatrix::set_block(std::size_t r0, std::size_t c0, const DenseMatrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw ShapeError("set_block out of range");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::copy(m.data_.data() + i * m.cols_, m.data_.data() + (i + 1) * m.cols_,
              data_.data() + (r0 + i) * cols_ + c0);
  }
}

void DenseMatrix::row_swap(std::size_t i, std::size_t j) {
  if (i == j) return;
  std::swap_ranges(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_,
                   data_.begin() + j * cols_);
}

void DenseMatrix::col_swap(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(data_[r * cols_ + i], data_[r * cols_ + j]);
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

void DenseMatrix::scale(double s) {
  for (double& v : data_) v *= s;
}

PermutationVector::PermutationVector(std::vector<std::size_t> map) : map_(std::move(map)) {
  std::vector<char> seen(map_.size(), 0);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) throw ParameterError("permutation map is not a bijection");
    seen[v] = 1;
  }
}

PermutationVector PermutationVector::identity(std::size_t n) {
  PermutationVector p;
  p.map_.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.map_[i] = i;
  return p;
}

void PermutationVector::swap_positions(std::size_t i, std::size_t j) {
  std::swap(map_[i], map_[j]);
}

PermutationVector PermutationVector::inverse() const {
  PermutationVector p;
  p.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) p.map_[map_[i]] = i;
  return p;
}

DenseMatrix permute_rows(const DenseMatrix& a, const PermutationVector& p) {
  if (p.size() != a.rows()) throw ShapeError("row permutation length mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(p[i], j);
  return out;
}

DenseMatrix permute_cols(const DenseMatrix& a, const PermutationVector& p) {
  if (p.size() != a.cols()) throw ShapeError("column permutation length mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, p[j]);
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, std::uint64_t* flops) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul shape mismatch: " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
  const std::size_t m = a.rows(), t = a.cols(), n = b.cols();
  DenseMatrix c(m, n);
  for (std::size_t t0 = 0; t0 < t; t0 += detail::kMatmulTile) {
    const std::size_t t1 = std::min(t0 + detail::kMatmulTile, t);
    for (std::size_t i = 0; i < m; ++i) {
      double* crow = c.data().data() + i * n;
      for (std::size_t q = t0; q < t1; ++q) {
        const double av = a(i, q);
        if (av == 0.0) continue;
        const double* brow = b.data().data() + q * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
  if (flops) *flops += 2ull * m * t * n;
  return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("subtract shape mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

DenseMatrix vstack(const DenseMatrix& top, const DenseMatrix& bottom) {
  if (top.cols() != bottom.cols() && !top.empty() && !bottom.empty())
    throw ShapeError("vstack column mismatch");
  const std::size_t cols = top.empty() ? bottom.cols() : top.cols();
  DenseMatrix out(top.rows() + bottom.rows(), cols);
  std::copy(top.data().begin(), top.data().end(), out.data().begin());
  std::copy(bottom.data().begin(), bottom.data().end(), out.data().begin() + top.size());
  return out;
}

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double max_abs(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s = std::max(s, std::fabs(v));
  return s;
}

double spectral_norm(const DenseMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) return 0.0;
  if (frobenius_norm(a) == 0.0) return 0.0;

  constexpr double kRelTol = 1e-12;
  constexpr std::size_t kMaxIter = 5000;

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> av(m), w(n);
  double sigma = 0.0, sigma_prev = -1.0;
  bool restarted = false;

  for (std::size_t iter = 0; iter < kMaxIter; ++iter) {
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      const double* row = a.data().data() + i * n;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * v[j];
      av[i] = s;
    }
    double nav = 0.0;
    for (double x : av) nav += x * x;
    sigma = std::sqrt(nav);
    if (sigma == 0.0) {
      // The all-ones start can sit in the null space; restart once from the
      // heaviest column's unit vector.
      if (restarted) return 0.0;
      restarted = true;
      std::size_t best = 0;
      double best_norm = -1.0;
      for (std::size_t j = 0; j < n; ++j) {
        double cn = 0.0;
        for (std::size_t i = 0; i < m; ++i) cn += a(i, j) * a(i, j);
        if (cn > best_norm) {
          best_norm = cn;
          best = j;
        }
      }
      std::fill(v.begin(), v.end(), 0.0);
      v[best] = 1.0;
      sigma_prev = -1.0;
      continue;
    }
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double x = av[i];
      const double* row = a.data().data() + i * n;
      for (std::size_t j = 0; j < n; ++j) w[j] += row[j] * x;
    }
    double nw = 0.0;
    for (double x : w) nw += x * x;
    nw = std::sqrt(nw);
    if (nw == 0.0) return sigma;
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / nw;
    if (sigma_prev >= 0.0 && std::fabs(sigma - sigma_prev) <= kRelTol * sigma) return sigma;
    sigma_prev = sigma;
  }
  throw ConvergenceError(std::fabs(sigma - sigma_prev),
                         "spectral norm power iteration did not converge; last gap " +
                             std::to_string(std::fabs(sigma - sigma_prev)));
}

double norm(const DenseMatrix& a, NormKind kind) {
  switch (kind) {
    case NormKind::frobenius:
      return frobenius_norm(a);
    case NormKind::spectral:
      return spectral_norm(a);
    case NormKind::max:
      return max_abs(a);
  }
  throw ParameterError("unknown norm kind");
}

DenseMatrix tri_solve(const DenseMatrix& t, const DenseMatrix& b, TriShape shape, TriSide side) {
  if (t.rows() != t.cols()) throw ShapeError("triangular factor must be square");
  const std::size_t k = t.rows();
  if (side == TriSide::left && b.rows() != k) throw ShapeError("tri_solve left: row mismatch");
  if (side == TriSide::right && b.cols() != k) throw ShapeError("tri_solve right: col mismatch");
  if (shape == TriShape::upper) {
    for (std::size_t i = 0; i < k; ++i) {
      if (t(i, i) == 0.0)
        throw SingularFactorError(i, "zero diagonal at index " + std::to_string(i));
    }
  }

  DenseMatrix x = b;
  if (side == TriSide::left) {
    const std::size_t nrhs = b.cols();
    if (shape == TriShape::lower_unit) {
      for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = 0; j < i; ++j) {
          const double f = t(i, j);
          if (f == 0.0) continue;
          for (std::size_t c = 0; c < nrhs; ++c) x(i, c) -= f * x(j, c);
        }
    } else {
      for (std::size_t ii = k; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < k; ++j) {
          const double f = t(ii, j);
          if (f == 0.0) continue;
          for (std::size_t c = 0; c < nrhs; ++c) x(ii, c) -= f * x(j, c);
        }
        const double d = t(ii, ii);
        for (std::size_t c = 0; c < nrhs; ++c) x(ii, c) /= d;
      }
    }
  } else {
    const std::size_t nrhs = b.rows();
    if (shape == TriShape::upper) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t q = 0; q < j; ++q) {
          const double f = t(q, j);
          if (f == 0.0) continue;
          for (std::size_t r = 0; r < nrhs; ++r) x(r, j) -= x(r, q) * f;
        }
        const double d = t(j, j);
        for (std::size_t r = 0; r < nrhs; ++r) x(r, j) /= d;
      }
    } else {
      for (std::size_t jj = k; jj-- > 0;) {
        for (std::size_t q = jj + 1; q < k; ++q) {
          const double f = t(q, jj);
          if (f == 0.0) continue;
          for (std::size_t r = 0; r < nrhs; ++r) x(r, jj) -= x(r, q) * f;
        }
      }
    }
  }
  return x;
}

namespace detail {

void schur_update_region(DenseMatrix& w, std::size_t r0, std::size_t r1, std::size_t c0,
                         std::size_t c1, std::size_t q0, std::size_t q1, std::uint64_t* flops) {
  const std::size_t n = w.cols();
  for (std::size_t i = r0; i < r1; ++i) {
    double* wrow = w.data().data() + i * n;
    for (std::size_t q = q0; q < q1; ++q) {
      const double f = wrow[q];
      if (f == 0.0) continue;
      const double* qrow = w.data().data() + q * n;
      for (std::size_t j = c0; j < c1; ++j) wrow[j] -= f * qrow[j];
    }
  }
  if (flops) *flops += 2ull * (r1 - r0) * (q1 - q0) * (c1 - c0);
}

}  // namespace detail

}  // namespace srlu
