// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "srlu/matrix.hpp"

namespace srlu {

/// m-by-n with singular values d^0, d^1, ..., built from two seeded random
/// orthogonal factors (QR of Gaussian matrices). Requires 0 < d < 1.
DenseMatrix gen_decay(std::size_t m, std::size_t n, double d, std::uint64_t seed);

/// Exact rank r: product of seeded Gaussian m-by-r and r-by-n factors.
DenseMatrix gen_rank(std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed);

/// Banded with seeded Gaussian entries inside |i-j| <= bandwidth.
DenseMatrix gen_banded(std::size_t m, std::size_t n, std::size_t bandwidth, std::uint64_t seed);

/// Classic Kahan upper-triangular matrix: row i scaled by s^i with s =
/// sqrt(1-c^2), unit diagonal before scaling, -c above it. Entry (0,0) is 1.
/// Square only.
DenseMatrix gen_kahan(std::size_t n, double c = 0.285);

/// Orthogonal factor of the QR decomposition of a seeded Gaussian n-by-n.
DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed);

}  // namespace srlu
