// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "srlu/matrix.hpp"
#include "srlu/sketch.hpp"

namespace srlu {

/// Rank-k truncated LU factorization state:
///   pi1 * A * pi2^T = lhat * uhat + [0 0; 0 S]
/// with lhat m-by-k unit lower trapezoidal (unit diagonal in its top k-by-k
/// block) and uhat k-by-n upper trapezoidal. The sketch, when present, still
/// describes the trailing Schur complement and lets SRP locate its dominant
/// column without materializing S. Swaps invalidate it.
struct TruncatedLU {
  PermutationVector pi1;
  PermutationVector pi2;
  DenseMatrix lhat;
  DenseMatrix uhat;
  std::size_t k = 0;
  std::size_t b = 0;
  std::optional<SketchState> sketch;

  std::size_t rows() const noexcept { return pi1.size(); }
  std::size_t cols() const noexcept { return pi2.size(); }
};

struct FactorOutcome {
  TruncatedLU factorization;
  std::size_t achieved_rank = 0;
  bool early_stop = false;
  /// Flops spent producing the factors: the projection R = Omega*A, the two
  /// Crout partial updates, the in-panel eliminations and the panel
  /// unit-lower solve that finishes each block row of uhat. Multiply and add
  /// count separately (a multiply-add pair is 2); the sketch maintenance
  /// products are pivot-selection overhead and are not included, matching the
  /// cost model 2pmn + (m+n)k^2 this counter is validated against.
  std::uint64_t flop_count = 0;
};

struct TrlucpOptions {
  std::size_t k = 0;
  std::size_t b = 0;        // 0 picks the tuning default, clamped to k
  std::size_t c = 8;        // oversampling excess, p = b + c
  std::uint64_t seed = 0;
};

/// Mid-factorization snapshot passed to a panel observer (test
/// instrumentation): fired after every completed panel.
struct PanelSnapshot {
  const DenseMatrix& working;  // in-place factors over the pivoted copy
  const PermutationVector& pi1;
  const PermutationVector& pi2;
  const SketchState& sketch;
  std::size_t rank_done;  // columns factored so far
};

using PanelObserver = std::function<void(const PanelSnapshot&)>;

/// Internal driver state, exposed so panel_step can be exercised directly.
struct FactorWorkspace {
  DenseMatrix w;
  PermutationVector pi1;
  PermutationVector pi2;
  SketchState sketch;
  std::size_t k_target = 0;
  std::size_t b = 0;
  std::size_t achieved = 0;
  bool early_stop = false;
  std::uint64_t flops = 0;
};

/// Copies `a`, initializes permutations and sketch. Validates parameters.
FactorWorkspace begin_factorization(const DenseMatrix& a, const TrlucpOptions& opts);

/// One Crout panel at column offset j of width bj: sketch-driven column
/// selection and swaps, partial Schur update of the incoming block column,
/// in-place LU with partial row pivoting (pivots applied to the whole row,
/// pi1 and the omega columns), block-row update of uhat, then the sketch
/// update. Returns false when the panel hit an all-zero pivot column and the
/// factorization stopped early at ws.achieved.
bool panel_step(FactorWorkspace& ws, std::size_t j, std::size_t bj);

/// Extracts the factors (rank ws.achieved) from a driven workspace.
FactorOutcome finish_factorization(FactorWorkspace&& ws);

/// Truncated randomized LU with complete pivoting. The input is not mutated.
FactorOutcome trlucp(const DenseMatrix& a, const TrlucpOptions& opts,
                     const PanelObserver& observer = nullptr);

/// Picks `b` distinct columns of r_block by QR with column pivoting, in
/// selection order; ties break to the lowest index.
std::vector<std::size_t> select_columns(const DenseMatrix& r_block, std::size_t b);

/// pi1 * A * pi2^T
DenseMatrix permuted_input(const DenseMatrix& a, const TruncatedLU& fact);

/// pi1*A*pi2^T - lhat*uhat (full m-by-n).
DenseMatrix residual_matrix(const DenseMatrix& a, const TruncatedLU& fact);

/// Trailing (m-k)-by-(n-k) Schur complement, computed from the original
/// input: S = (pi1*A*pi2^T)_22 - L21*U12.
DenseMatrix explicit_schur(const DenseMatrix& a, const TruncatedLU& fact);

}  // namespace srlu
