// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "srlu/trlucp.hpp"

namespace srlu {

enum class AlphaMode { sketched, exact };

struct SrpConfig {
  double f = 5.0;             // quality tolerance, must be > 1
  std::size_t max_swaps = 0;  // 0 selects the default 4*k
  AlphaMode alpha_mode = AlphaMode::sketched;
};

/// Candidate pivot found in the trailing Schur complement. Positions are in
/// the trailing (m-k)-by-(n-k) frame. `present` is false when there is no
/// Schur complement to test (k = min(m,n) or an empty trailing window).
struct AlphaLocation {
  double value = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
  bool present = false;
};

/// Quality test on the bordered (k+1)-by-(k+1) block. `inv_row`/`inv_col` is
/// the argmax position in Abar11^{-1}; the row of the inverse indexes the
/// column of Abar11 to eject and the column of the inverse indexes the row,
/// which is what makes each accepted swap grow |det| of the leading block by
/// at least f. An index equal to k means the alpha row/column itself, i.e. no
/// swap on that side.
struct SrpTestResult {
  bool pass = false;
  double maxinv = 0.0;
  double threshold = 0.0;  // f / |alpha|
  std::size_t inv_row = 0;
  std::size_t inv_col = 0;
};

struct SrpRound {
  double alpha = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

struct SrpReport {
  std::vector<SrpRound> alpha_trace;
  std::size_t swaps = 0;
  double final_maxinv = 0.0;
  double final_threshold = 0.0;
  /// |det| of the leading k-by-k block (product of |uhat| diagonals),
  /// recorded before the first swap and after each one; consecutive entries
  /// grow by at least f.
  std::vector<double> det_trace;
  std::size_t fallback_refactorizations = 0;
  bool passed = false;
};

/// Termination-with-partial-result error: the swap cap was hit.
class SwapCapError : public Error {
 public:
  explicit SwapCapError(SrpReport report)
      : Error(ErrorCode::swap_cap, "SRP swap cap exceeded"), report_(std::move(report)) {}
  const SrpReport& report() const noexcept { return report_; }

 private:
  SrpReport report_;
};

/// Finds the dominant Schur-complement entry. Sketched mode picks the sketch
/// column with the largest 2-norm and Schur-updates only that column (one
/// small product against the stored factors); exact mode scans the explicit
/// Schur complement. Sketched mode requires a retained sketch.
AlphaLocation locate_alpha(const DenseMatrix& a, const TruncatedLU& fact, AlphaMode mode);

/// Evaluates |Abar11^{-1}|_max <= f/|alpha| exactly via k+1 pairs of
/// triangular solves against the bordered factors.
SrpTestResult srp_test(const TruncatedLU& fact, double alpha, std::size_t row, std::size_t col,
                       double f);

/// Swaps the Schur row/column holding alpha into the leading block, ejecting
/// leading row `to_row` and column `to_col` (pass k to skip that side), and
/// restores truncated LU form by re-eliminating from the first affected
/// index. On a degenerate pivot the leading block is refactored with row
/// pivoting restricted to the leading k rows (`fallback_used` reports this).
TruncatedLU apply_swap(const DenseMatrix& a, const TruncatedLU& fact, std::size_t schur_row,
                       std::size_t schur_col, std::size_t to_row, std::size_t to_col,
                       bool* fallback_used = nullptr);

/// The full swap loop: locate, test, swap until the test passes or alpha
/// vanishes. A pass reached in sketched mode is re-verified exactly before
/// terminating. Throws SwapCapError (carrying the partial report) past
/// max_swaps.
std::pair<TruncatedLU, SrpReport> srp(const DenseMatrix& a, const TruncatedLU& fact,
                                      const SrpConfig& config);

/// Product of |uhat| diagonals: |det| of the leading k-by-k block.
double leading_block_det(const TruncatedLU& fact);

}  // namespace srlu
