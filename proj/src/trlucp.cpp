// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/trlucp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srlu/tuning.hpp"

namespace srlu {

std::vector<std::size_t> select_columns(const DenseMatrix& r_block, std::size_t b) {
  const std::size_t p = r_block.rows(), w = r_block.cols();
  if (b > w) {
    throw ParameterError("cannot select " + std::to_string(b) + " columns from " +
                         std::to_string(w));
  }
  DenseMatrix q = r_block;
  std::vector<std::size_t> orig(w);
  for (std::size_t j = 0; j < w; ++j) orig[j] = j;
  std::vector<std::size_t> picked;
  picked.reserve(b);

  const std::size_t steps = std::min(b, p);
  for (std::size_t t = 0; t < steps; ++t) {
    // Residual column norms of rows t.., recomputed exactly each step; the
    // classic norm-downdating shortcut is not worth its safeguards at p this
    // small, and exact recomputation keeps ties bit-reproducible.
    std::size_t best = t;
    double best_norm = -1.0;
    for (std::size_t j = t; j < w; ++j) {
      double s = 0.0;
      for (std::size_t r = t; r < p; ++r) s += q(r, j) * q(r, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    q.col_swap(t, best);
    std::swap(orig[t], orig[best]);
    picked.push_back(orig[t]);

    // Householder reflection on rows t.. of column t, applied to the trailing
    // columns.
    double xn = 0.0;
    for (std::size_t r = t; r < p; ++r) xn += q(r, t) * q(r, t);
    xn = std::sqrt(xn);
    if (xn == 0.0) continue;
    std::vector<double> v(p - t);
    for (std::size_t r = t; r < p; ++r) v[r - t] = q(r, t);
    v[0] += (v[0] >= 0.0 ? xn : -xn);
    double vn2 = 0.0;
    for (double x : v) vn2 += x * x;
    if (vn2 == 0.0) continue;
    for (std::size_t j = t + 1; j < w; ++j) {
      double dot = 0.0;
      for (std::size_t r = t; r < p; ++r) dot += v[r - t] * q(r, j);
      const double f = 2.0 * dot / vn2;
      for (std::size_t r = t; r < p; ++r) q(r, j) -= f * v[r - t];
    }
  }
  // More pivots requested than sketch rows: pad with the leftmost unused
  // columns (only reachable when b > p, which trlucp never asks for).
  for (std::size_t j = 0; picked.size() < b; ++j) {
    if (std::find(picked.begin(), picked.end(), orig[j]) == picked.end())
      picked.push_back(orig[j]);
  }
  return picked;
}

FactorWorkspace begin_factorization(const DenseMatrix& a, const TrlucpOptions& opts) {
  const std::size_t m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) throw ParameterError("input matrix is empty");
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw NumericError("input contains non-finite entries");
  }
  if (opts.k < 1 || opts.k > std::min(m, n)) {
    throw ParameterError("target rank " + std::to_string(opts.k) + " outside [1, " +
                         std::to_string(std::min(m, n)) + "]");
  }
  std::size_t b = opts.b;
  if (b == 0) b = default_block_size(m, n, opts.k);
  b = std::min(b, opts.k);
  // The oversampling excess shrinks on short matrices so p = b + c <= m
  // always holds (b <= k <= m already).
  const std::size_t c = std::min(opts.c, m - b);

  FactorWorkspace ws;
  ws.w = a;
  ws.pi1 = PermutationVector::identity(m);
  ws.pi2 = PermutationVector::identity(n);
  ws.sketch = init_sketch(a, b, c, opts.seed);
  ws.flops += 2ull * ws.sketch.p * m * n;  // projection R = Omega*A
  ws.k_target = opts.k;
  ws.b = b;
  return ws;
}

namespace {

// Forward-substitutes the panel's unit-lower block against the block row of
// uhat, finishing rows [j, j+done) for columns [j+bj, n).
void finish_block_row(FactorWorkspace& ws, std::size_t j, std::size_t bj, std::size_t done) {
  DenseMatrix& w = ws.w;
  const std::size_t n = w.cols();
  if (j + bj >= n || done == 0) return;
  detail::schur_update_region(w, j, j + done, j + bj, n, 0, j, &ws.flops);
  for (std::size_t t = 1; t < done; ++t) {
    double* trow = w.data().data() + (j + t) * n;
    for (std::size_t q = 0; q < t; ++q) {
      const double f = w(j + t, j + q);
      if (f == 0.0) continue;
      const double* qrow = w.data().data() + (j + q) * n;
      for (std::size_t col = j + bj; col < n; ++col) trow[col] -= f * qrow[col];
    }
  }
  ws.flops += static_cast<std::uint64_t>(done) * (done - 1) * (n - j - bj);
}

}  // namespace

bool panel_step(FactorWorkspace& ws, std::size_t j, std::size_t bj) {
  DenseMatrix& w = ws.w;
  const std::size_t m = w.rows(), n = w.cols();
  if (j % ws.b != 0 && j != ws.achieved) throw ParameterError("panel offset misaligned");
  if (j + bj > ws.k_target) throw ParameterError("panel exceeds target rank");

  // Column selection on the sketch window, swaps mirrored into the working
  // matrix, pi2 and the sketch itself.
  std::vector<std::size_t> sel = select_columns(ws.sketch.r, bj);
  for (std::size_t t = 0; t < bj; ++t) {
    const std::size_t src = sel[t];
    if (src != t) {
      w.col_swap(j + t, j + src);
      ws.pi2.swap_positions(j + t, j + src);
      ws.sketch.r.col_swap(t, src);
      for (std::size_t t2 = t + 1; t2 < bj; ++t2)
        if (sel[t2] == t) sel[t2] = src;
    }
  }

  // Partial Schur update of the incoming block column.
  detail::schur_update_region(w, j, m, j, j + bj, 0, j, &ws.flops);

  // In-place LU with partial row pivoting on the panel. Row swaps cover the
  // whole working row (earlier lhat columns and the trailing part) and the
  // matching omega columns, so the sketch keeps tracking the pivoted matrix.
  for (std::size_t i = 0; i < bj; ++i) {
    const std::size_t col = j + i;
    std::size_t piv_row = col;
    double piv_val = std::fabs(w(col, col));
    for (std::size_t r = col + 1; r < m; ++r) {
      const double v = std::fabs(w(r, col));
      if (v > piv_val) {
        piv_val = v;
        piv_row = r;
      }
    }
    if (std::isnan(piv_val)) throw NumericError("NaN encountered in panel pivot search");
    if (piv_val == 0.0) {
      ws.achieved = col;
      ws.early_stop = true;
      finish_block_row(ws, j, bj, i);
      return false;
    }
    if (piv_row != col) {
      w.row_swap(piv_row, col);
      ws.pi1.swap_positions(piv_row, col);
      ws.sketch.omega.col_swap(piv_row, col);
    }
    const double piv = w(col, col);
    for (std::size_t r = col + 1; r < m; ++r) w(r, col) /= piv;
    ws.flops += m - col - 1;
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = w(r, col);
      if (f == 0.0) continue;
      double* rrow = w.data().data() + r * n;
      const double* crow = w.data().data() + col * n;
      for (std::size_t c2 = col + 1; c2 < j + bj; ++c2) rrow[c2] -= f * crow[c2];
    }
    ws.flops += 2ull * (m - col - 1) * (j + bj - col - 1);
  }

  // Block-row update of uhat: prior panels' contribution, then the in-panel
  // unit-lower solve.
  finish_block_row(ws, j, bj, bj);
  ws.achieved = j + bj;

  // Sketch update; also run after the last panel so SRP inherits a sketch of
  // the final Schur complement.
  if (n > j + bj) {
    DenseMatrix l22(bj, bj);
    for (std::size_t r = 0; r < bj; ++r) {
      l22(r, r) = 1.0;
      for (std::size_t c2 = 0; c2 < r; ++c2) l22(r, c2) = w(j + r, j + c2);
    }
    const DenseMatrix l32 = w.block(j + bj, j, m - j - bj, bj);
    const DenseMatrix u23 = w.block(j, j + bj, bj, n - j - bj);
    sketch_update(ws.sketch, l22, l32, u23);
  } else {
    ws.sketch.r = DenseMatrix(ws.sketch.p, 0);
    ws.sketch.consumed += bj;
  }
  return true;
}

FactorOutcome finish_factorization(FactorWorkspace&& ws) {
  const std::size_t m = ws.w.rows(), n = ws.w.cols(), kk = ws.achieved;
  TruncatedLU f;
  f.pi1 = std::move(ws.pi1);
  f.pi2 = std::move(ws.pi2);
  f.k = kk;
  f.b = ws.b;
  f.lhat = DenseMatrix(m, kk);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < kk; ++t)
      f.lhat(i, t) = i > t ? ws.w(i, t) : (i == t ? 1.0 : 0.0);
  f.uhat = DenseMatrix(kk, n);
  for (std::size_t t = 0; t < kk; ++t)
    for (std::size_t c = t; c < n; ++c) f.uhat(t, c) = ws.w(t, c);
  // The sketch stays valid only when every panel, including the last, ran to
  // completion and updated it.
  if (!ws.early_stop && ws.sketch.consumed == kk) f.sketch = std::move(ws.sketch);

  FactorOutcome out;
  out.achieved_rank = kk;
  out.early_stop = ws.early_stop;
  out.flop_count = ws.flops;
  out.factorization = std::move(f);
  return out;
}

FactorOutcome trlucp(const DenseMatrix& a, const TrlucpOptions& opts,
                     const PanelObserver& observer) {
  FactorWorkspace ws = begin_factorization(a, opts);
  std::size_t j = 0;
  while (j < ws.k_target) {
    const std::size_t bj = std::min(ws.b, ws.k_target - j);
    if (!panel_step(ws, j, bj)) break;
    if (observer) {
      observer(PanelSnapshot{ws.w, ws.pi1, ws.pi2, ws.sketch, ws.achieved});
    }
    j += bj;
  }
  return finish_factorization(std::move(ws));
}

DenseMatrix permuted_input(const DenseMatrix& a, const TruncatedLU& fact) {
  if (a.rows() != fact.rows() || a.cols() != fact.cols())
    throw ShapeError("factorization shape does not match the input");
  return permute_cols(permute_rows(a, fact.pi1), fact.pi2);
}

DenseMatrix residual_matrix(const DenseMatrix& a, const TruncatedLU& fact) {
  return subtract(permuted_input(a, fact), matmul(fact.lhat, fact.uhat));
}

DenseMatrix explicit_schur(const DenseMatrix& a, const TruncatedLU& fact) {
  const std::size_t m = a.rows(), n = a.cols(), k = fact.k;
  const DenseMatrix p = permuted_input(a, fact);
  DenseMatrix s = p.block(k, k, m - k, n - k);
  if (s.empty()) return s;
  const DenseMatrix l21 = fact.lhat.block(k, 0, m - k, k);
  const DenseMatrix u12 = fact.uhat.block(0, k, k, n - k);
  const DenseMatrix prod = matmul(l21, u12);
  for (std::size_t i = 0; i < s.size(); ++i) s.data()[i] -= prod.data()[i];
  return s;
}

}  // namespace srlu
