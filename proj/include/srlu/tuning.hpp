// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "srlu/errors.hpp"

namespace srlu {

/// Hardware parameters for the block-size cost model. Units are arbitrary but
/// consistent: cache capacity in 64-bit words, per-flop and per-memory-move
/// costs in the same time unit. Defaults are a documented config (256K-word
/// cache, memory 30x slower than a flop), not measured truth.
struct BlockSizeModel {
  double cache_words = 262144.0;  // 2^18
  double t_flop = 1.0;
  double t_mem = 30.0;
  std::size_t oversample_excess = 8;  // c, so the projection has p = b + c rows
};

/// Predicted factorization time for block size b. Evaluates the model's flop
/// and memory brackets verbatim; for b close to k the brackets can go
/// negative, which choose_block_size avoids by clamping its search range.
double predict_time(std::size_t m, std::size_t n, std::size_t k, std::size_t b,
                    const BlockSizeModel& model);

/// Exhaustive argmin of predict_time over [b_lo, b_hi]; ties break to the
/// smaller b. Passing 0 for both bounds selects the default range
/// [4, min(64, k)] (clamped to [1, k]).
std::size_t choose_block_size(std::size_t m, std::size_t n, std::size_t k,
                              const BlockSizeModel& model, std::size_t b_lo = 0,
                              std::size_t b_hi = 0);

/// Cache-blocking dimensions for the p-by-m projection product:
/// s* = min(sqrt(M/3), p), b* = l* = max(sqrt(M/3), sqrt(p^2+M) - p).
/// Real-valued; callers round. Always satisfies s*l + l*b + s*b <= M.
struct SketchBlockDims {
  double s = 0.0;
  double b = 0.0;
  double l = 0.0;
};

SketchBlockDims sketch_block_dims(double p, double cache_words);

/// Default block size for a factorization when the caller does not supply
/// one: choose_block_size over the default range with the default model.
std::size_t default_block_size(std::size_t m, std::size_t n, std::size_t k);

}  // namespace srlu
