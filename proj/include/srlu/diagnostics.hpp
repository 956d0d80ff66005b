// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "srlu/extensions.hpp"
#include "srlu/trlucp.hpp"

namespace srlu {

struct FillCounts {
  std::uint64_t l = 0;
  std::uint64_t u = 0;
  std::optional<std::uint64_t> schur;
  std::optional<std::uint64_t> input;
  double threshold = 1e-14;
};

/// Pass/fail of the bound checks; unset means not evaluated (e.g. no CUR).
struct DiagnosticsChecks {
  std::optional<bool> thm1_equality;   // |P - LU| = |S|, Frobenius and max
  std::optional<bool> thm1_rank_s;     // |P - (LU)_s|_2 <= 2|S|_2 + sigma_{s+1}
  std::optional<bool> thm2;            // singular-value sandwich for plain LU
  std::optional<bool> thm3_fro;        // CUR Frobenius error <= |S|_F
  std::optional<bool> thm3_spectral;   // CUR spectral error <= 2|S|_2
  std::optional<bool> thm5_fidelity;   // |ratio - 1| <= 1% where sigma_{k+1}/sigma_j <= 1e-3
  std::optional<bool> thm7_ordering;   // sigma_j(CUR) <= sigma_j(A) under its hypothesis
};

struct DiagnosticsReport {
  std::size_t m = 0, n = 0, k = 0;

  std::optional<double> residual_f, residual_2, residual_max;
  std::optional<double> schur_f, schur_2, schur_max;
  std::optional<double> cur_residual_f, cur_residual_2;

  std::vector<double> sv_ratios;  // sigma_j(LU) / sigma_j(A), j < k

  std::optional<double> q1;     // residual_2 / sigma_{k+1}
  std::optional<double> q2;     // max_j sigma_j(A) / sigma_j(LU)
  std::optional<double> gamma;  // same formula as q1; 0 when sigma_{k+1} ~ 0
  std::optional<double> tau;    // max_j |ratio_j - 1| * sigma_j / sigma_{k+1}
  std::optional<double> omega;  // CUR Frobenius error / sigma_{k+1}

  FillCounts fill;
  DiagnosticsChecks checks;
};

/// Tolerances shared by the checks and the acceptance suite.
namespace diag {
inline constexpr double kThm1RelTol = 1e-12;
// Machine floor: when both sides of an identity sit at roundoff level the
// relative test is meaningless; equality then means both below this times
// the input scale.
inline constexpr double kNoiseFloor = 1e-13;
inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kSigmaZeroRel = 1e-14;  // sigma_{k+1} below this * sigma_1 counts as 0
inline constexpr double kFillThreshold = 1e-14;
}  // namespace diag

/// Residual and Schur norms, the residual-identity check (thm1), and (with a
/// CUR core) the CUR error bounds (thm3) plus gamma/omega from the SVD oracle.
DiagnosticsReport residual_report(const DenseMatrix& a, const TruncatedLU& fact,
                                  const CurFactor* cur = nullptr);

/// Singular-value fidelity: sv_ratios, q1/q2/tau, the sandwich and rank-s
/// truncation bounds (thm2, thm1_rank_s), the separation-filtered fidelity
/// check (thm5), and with CUR the ordering check (thm7). Throws
/// CapacityError past the oracle cap.
DiagnosticsReport spectrum_report(const DenseMatrix& a, const TruncatedLU& fact,
                                  const CurFactor* cur = nullptr);

/// Entries larger than `threshold` in magnitude in lhat/uhat, and in the
/// Schur complement / input when given.
FillCounts fill_report(const TruncatedLU& fact, double threshold,
                       const DenseMatrix* schur = nullptr, const DenseMatrix* input = nullptr);

struct DiagnosticsOptions {
  bool with_spectrum = true;
  bool with_norms = true;
  double fill_threshold = diag::kFillThreshold;
};

/// Union of the three reports above.
DiagnosticsReport run_diagnostics(const DenseMatrix& a, const TruncatedLU& fact,
                                  const CurFactor* cur, const DiagnosticsOptions& opts);

}  // namespace srlu
