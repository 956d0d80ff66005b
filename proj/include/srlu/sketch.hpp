// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "srlu/matrix.hpp"

namespace srlu {

/// Deterministic standard-normal stream. The generator is pinned so sketches
/// reproduce bit-for-bit from a seed:
///   - state update: SplitMix64 (state += 0x9E3779B97F4A7C15, then the two
///     xor-multiply finalization rounds);
///   - uniform: u = ((bits >> 11) + 1) * 2^-53, giving (0, 1];
///   - normal: Box-Muller on consecutive uniform pairs, cosine variate first,
///     sine variate cached and returned next.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double next();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Fills an r-by-c matrix row-major from the stream.
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, GaussianStream& g);

/// Gaussian projection Omega (p-by-m) and the evolving sketch r of the
/// not-yet-factored Schur complement columns. `consumed` columns have been
/// factored so far; r spans the remaining n-consumed columns.
///
/// Single-writer: the factorization owning the state mutates it (including
/// column swaps of omega/r that track pivoting).
struct SketchState {
  DenseMatrix omega;
  DenseMatrix r;
  std::size_t p = 0;
  std::size_t c = 0;
  std::size_t consumed = 0;
  std::uint64_t seed = 0;
};

/// Draws omega (p = b + c rows) from the seeded stream and projects:
/// r = omega * a. Requires p <= m.
SketchState init_sketch(const DenseMatrix& a, std::size_t b, std::size_t c, std::uint64_t seed);

/// Advances the sketch past one factored panel without touching the trailing
/// Schur complement: r <- r2 - (omega2*l22 + omega3*l32)*u23, where omega2
/// and omega3 are the column blocks of omega aligned with the rows just
/// factored and the rows below them, and r2 drops the consumed columns.
void sketch_update(SketchState& state, const DenseMatrix& l22, const DenseMatrix& l32,
                   const DenseMatrix& u23);

}  // namespace srlu
