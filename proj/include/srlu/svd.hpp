// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "srlu/matrix.hpp"

namespace srlu {

/// Non-increasing, non-negative singular values.
struct SingularSpectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
};

/// A = u * diag(sigma) * v^T with u m-by-p, v n-by-p, p = min(m,n).
/// Columns of u belonging to exactly zero singular values are zero vectors.
struct SvdResult {
  DenseMatrix u;
  SingularSpectrum sigma;
  DenseMatrix v;
};

/// Reference SVD by one-sided Jacobi (Hestenes) iteration. A desk-scale test
/// oracle, not a performance path: min(m,n) must be at most 2000 or a
/// CapacityError is thrown. Reconstruction error is well below 1e-10*|A|_F.
SvdResult svd_oracle(const DenseMatrix& a);

/// Best rank-s approximation sum_{i<s} sigma_i u_i v_i^T. 1 <= s <= min(m,n).
DenseMatrix truncated_svd(const DenseMatrix& a, std::size_t s);

/// Moore-Penrose pseudo-inverse through the SVD oracle. Singular values at or
/// below max(m,n)*1e-15 times the largest are treated as zero.
DenseMatrix pseudo_inverse(const DenseMatrix& a);

}  // namespace srlu
