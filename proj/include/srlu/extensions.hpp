// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "srlu/srp.hpp"
#include "srlu/trlucp.hpp"

namespace srlu {

enum class CurMode { exact, approximate };

/// The k-by-k core of the CUR refinement lhat * m_mid * uhat.
struct CurFactor {
  DenseMatrix m_mid;
  CurMode mode = CurMode::exact;
  std::size_t source_rank = 0;  // rank of the approximation standing in for A
};

/// M = lhat^+ * (pi1 A pi2^T) * uhat^+, pseudo-inverses through the SVD
/// oracle (the factors are trapezoidal, not square).
CurFactor cur_exact(const DenseMatrix& a, const TruncatedLU& fact);

/// Same, with the rank-fact_hi.k reconstruction of A substituted for A.
/// Both factorizations must come from the same matrix; requires
/// fact_hi.k >= fact.k.
CurFactor cur_approx(const TruncatedLU& fact_hi, const TruncatedLU& fact);

/// lhat * m_mid * uhat in the factorization's permuted frame.
DenseMatrix cur_reconstruct(const TruncatedLU& fact, const CurFactor& cur);

/// Appends s new observation rows to a factored matrix: builds the augmented
/// factorization (L31 = B1 * U11^{-1}, S_new = B2 - L31 * U12) over the
/// stacked matrix and runs SRP in exact alpha mode. A decay factor < 1
/// down-weights the old data by scaling uhat and the old Schur block, so the
/// result factors [decay*A_old; B]. Appending zero rows returns the input
/// unchanged.
std::pair<TruncatedLU, SrpReport> append_rows(const DenseMatrix& a_old, const TruncatedLU& fact,
                                              const DenseMatrix& b, double decay,
                                              const SrpConfig& config);

/// The stacked matrix a given append actually factors: [decay*a_old; b].
DenseMatrix stacked_input(const DenseMatrix& a_old, const DenseMatrix& b, double decay);

}  // namespace srlu
