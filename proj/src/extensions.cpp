// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srlu/svd.hpp"

namespace srlu {

namespace {

void check_pair(const DenseMatrix& a, const TruncatedLU& fact) {
  if (a.rows() != fact.rows() || a.cols() != fact.cols())
    throw ShapeError("factorization shape does not match the input");
}

}  // namespace

CurFactor cur_exact(const DenseMatrix& a, const TruncatedLU& fact) {
  check_pair(a, fact);
  const DenseMatrix p = permuted_input(a, fact);
  const DenseMatrix lp = pseudo_inverse(fact.lhat);
  const DenseMatrix up = pseudo_inverse(fact.uhat);
  CurFactor cur;
  cur.m_mid = matmul(matmul(lp, p), up);
  cur.mode = CurMode::exact;
  cur.source_rank = std::min(a.rows(), a.cols());
  return cur;
}

CurFactor cur_approx(const TruncatedLU& fact_hi, const TruncatedLU& fact) {
  if (fact_hi.rows() != fact.rows() || fact_hi.cols() != fact.cols())
    throw ProvenanceError("factorizations do not come from the same matrix shape");
  if (fact_hi.k < fact.k)
    throw ParameterError("the substitute factorization must have rank >= the target's");

  // Reconstruction of A from fact_hi, re-expressed in fact's permuted frame:
  // row i, col j of pi1*A*pi2^T is row inv_hi1[pi1[i]], col inv_hi2[pi2[j]]
  // of lhat_hi * uhat_hi.
  const DenseMatrix d = matmul(fact_hi.lhat, fact_hi.uhat);
  const PermutationVector inv1 = fact_hi.pi1.inverse();
  const PermutationVector inv2 = fact_hi.pi2.inverse();
  DenseMatrix p(fact.rows(), fact.cols());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const std::size_t src_r = inv1[fact.pi1[i]];
    for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) = d(src_r, inv2[fact.pi2[j]]);
  }

  CurFactor cur;
  cur.m_mid = matmul(matmul(pseudo_inverse(fact.lhat), p), pseudo_inverse(fact.uhat));
  cur.mode = CurMode::approximate;
  cur.source_rank = fact_hi.k;
  return cur;
}

DenseMatrix cur_reconstruct(const TruncatedLU& fact, const CurFactor& cur) {
  return matmul(fact.lhat, matmul(cur.m_mid, fact.uhat));
}

DenseMatrix stacked_input(const DenseMatrix& a_old, const DenseMatrix& b, double decay) {
  DenseMatrix scaled = a_old;
  if (decay != 1.0) scaled.scale(decay);
  return vstack(scaled, b);
}

std::pair<TruncatedLU, SrpReport> append_rows(const DenseMatrix& a_old, const TruncatedLU& fact,
                                              const DenseMatrix& b, double decay,
                                              const SrpConfig& config) {
  check_pair(a_old, fact);
  if (b.rows() > 0 && b.cols() != a_old.cols())
    throw ShapeError("new rows have " + std::to_string(b.cols()) + " columns, expected " +
                     std::to_string(a_old.cols()));
  if (!(decay > 0.0) || decay > 1.0) throw ParameterError("decay must lie in (0, 1]");

  const std::size_t s = b.rows();
  if (s == 0) {
    SrpReport noop;
    noop.passed = true;
    noop.det_trace.push_back(leading_block_det(fact));
    return {fact, noop};
  }

  const std::size_t m = fact.rows(), n = fact.cols(), k = fact.k;

  TruncatedLU aug;
  aug.k = k;
  aug.b = fact.b;
  aug.pi2 = fact.pi2;
  {
    std::vector<std::size_t> rows = fact.pi1.map();
    rows.reserve(m + s);
    for (std::size_t i = 0; i < s; ++i) rows.push_back(m + i);
    aug.pi1 = PermutationVector(std::move(rows));
  }
  aug.uhat = fact.uhat;
  if (decay != 1.0) aug.uhat.scale(decay);

  // B in the pivoted column order, split at k.
  DenseMatrix b1(s, k), b2(s, n - k);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < k; ++j) b1(i, j) = b(i, fact.pi2[j]);
    for (std::size_t j = k; j < n; ++j) b2(i, j - k) = b(i, fact.pi2[j]);
  }
  const DenseMatrix u11 = aug.uhat.block(0, 0, k, k);
  const DenseMatrix l31 = tri_solve(u11, b1, TriShape::upper, TriSide::right);
  aug.lhat = vstack(fact.lhat, l31);

  const DenseMatrix stacked = stacked_input(a_old, b, decay);
  SrpConfig cfg = config;
  cfg.alpha_mode = AlphaMode::exact;  // no sketch covers the stacked matrix
  return srp(stacked, aug, cfg);
}

}  // namespace srlu
