// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/srp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace srlu {

namespace {

// w[d:m, d:n] -= L[d:m, 0:d] * U[0:d, d:n]
void subtract_prefix_product(DenseMatrix& w, const DenseMatrix& l, const DenseMatrix& u,
                             std::size_t d) {
  const std::size_t m = w.rows(), n = w.cols();
  for (std::size_t i = d; i < m; ++i) {
    double* wrow = w.data().data() + i * n;
    for (std::size_t q = 0; q < d; ++q) {
      const double f = l(i, q);
      if (f == 0.0) continue;
      const double* urow = u.data().data() + q * n;
      for (std::size_t j = d; j < n; ++j) wrow[j] -= f * urow[j];
    }
  }
}

// Re-eliminates columns d..k of the permuted matrix without pivoting (the row
// and column order is fixed by the swap); factor rows/columns before d are
// reused as-is. Returns false when a pivot degenerates and the caller should
// fall back to the pivoted refactorization.
bool refactor_suffix(const DenseMatrix& p, std::size_t k, std::size_t d, DenseMatrix& l,
                     DenseMatrix& u) {
  const std::size_t m = p.rows(), n = p.cols();
  DenseMatrix w = p;
  subtract_prefix_product(w, l, u, d);

  for (std::size_t t = d; t < k; ++t) {
    double colmax = 0.0;
    for (std::size_t r = t; r < m; ++r) colmax = std::max(colmax, std::fabs(w(r, t)));
    const double piv = w(t, t);
    if (std::isnan(colmax)) throw NumericError("NaN during swap re-elimination");
    if (colmax == 0.0 || std::fabs(piv) < 1e-13 * colmax) return false;
    for (std::size_t r = t + 1; r < m; ++r) w(r, t) /= piv;
    for (std::size_t r = t + 1; r < m; ++r) {
      const double f = w(r, t);
      if (f == 0.0) continue;
      double* rrow = w.data().data() + r * n;
      const double* trow = w.data().data() + t * n;
      for (std::size_t c = t + 1; c < n; ++c) rrow[c] -= f * trow[c];
    }
  }
  for (std::size_t t = d; t < k; ++t) {
    for (std::size_t i = 0; i < m; ++i) l(i, t) = i > t ? w(i, t) : (i == t ? 1.0 : 0.0);
    for (std::size_t c = 0; c < n; ++c) u(t, c) = c >= t ? w(t, c) : 0.0;
  }
  return true;
}

// Full refactorization of the leading k columns with partial row pivoting
// restricted to the leading k rows, so the row set chosen by SRP is kept.
void refactor_leading_pivoted(const DenseMatrix& a, std::size_t k, PermutationVector& pi1,
                              const PermutationVector& pi2, DenseMatrix& l, DenseMatrix& u) {
  DenseMatrix w = permute_cols(permute_rows(a, pi1), pi2);
  const std::size_t m = w.rows(), n = w.cols();
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t piv_row = t;
    double piv_val = std::fabs(w(t, t));
    for (std::size_t r = t + 1; r < k; ++r) {
      const double v = std::fabs(w(r, t));
      if (v > piv_val) {
        piv_val = v;
        piv_row = r;
      }
    }
    if (piv_val == 0.0)
      throw NumericError("leading block singular after swap (column " + std::to_string(t) + ")");
    if (piv_row != t) {
      w.row_swap(piv_row, t);
      pi1.swap_positions(piv_row, t);
    }
    const double piv = w(t, t);
    for (std::size_t r = t + 1; r < m; ++r) w(r, t) /= piv;
    for (std::size_t r = t + 1; r < m; ++r) {
      const double f = w(r, t);
      if (f == 0.0) continue;
      double* rrow = w.data().data() + r * n;
      const double* trow = w.data().data() + t * n;
      for (std::size_t c = t + 1; c < n; ++c) rrow[c] -= f * trow[c];
    }
  }
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t i = 0; i < m; ++i) l(i, t) = i > t ? w(i, t) : (i == t ? 1.0 : 0.0);
    for (std::size_t c = 0; c < n; ++c) u(t, c) = c >= t ? w(t, c) : 0.0;
  }
}

}  // namespace

AlphaLocation locate_alpha(const DenseMatrix& a, const TruncatedLU& fact, AlphaMode mode) {
  const std::size_t m = fact.rows(), n = fact.cols(), k = fact.k;
  AlphaLocation loc;
  if (k >= std::min(m, n) || m == k || n == k) return loc;

  if (mode == AlphaMode::exact) {
    const DenseMatrix s = explicit_schur(a, fact);
    loc.present = true;
    double best = -1.0;
    for (std::size_t r = 0; r < s.rows(); ++r)
      for (std::size_t c = 0; c < s.cols(); ++c) {
        const double v = std::fabs(s(r, c));
        if (v > best) {
          best = v;
          loc.value = s(r, c);
          loc.row = r;
          loc.col = c;
        }
      }
    return loc;
  }

  if (!fact.sketch.has_value())
    throw ParameterError("sketched alpha mode needs a retained sketch");
  const SketchState& sk = *fact.sketch;
  if (sk.consumed != k || sk.r.cols() != n - k)
    throw ParameterError("retained sketch does not match the factorization rank");

  std::size_t best_col = 0;
  double best_norm = -1.0;
  for (std::size_t c = 0; c < sk.r.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < sk.r.rows(); ++r) s += sk.r(r, c) * sk.r(r, c);
    if (s > best_norm) {
      best_norm = s;
      best_col = c;
    }
  }

  // Schur-update just that column: S(:,c) = P22(:,c) - L21 * U12(:,c).
  const DenseMatrix pa = permuted_input(a, fact);
  std::vector<double> col(m - k);
  for (std::size_t r = 0; r < m - k; ++r) {
    double s = pa(k + r, k + best_col);
    const double* lrow = fact.lhat.data().data() + (k + r) * k;
    for (std::size_t q = 0; q < k; ++q) s -= lrow[q] * fact.uhat(q, k + best_col);
    col[r] = s;
  }
  loc.present = true;
  loc.col = best_col;
  double best = -1.0;
  for (std::size_t r = 0; r < col.size(); ++r) {
    if (std::fabs(col[r]) > best) {
      best = std::fabs(col[r]);
      loc.value = col[r];
      loc.row = r;
    }
  }
  return loc;
}

SrpTestResult srp_test(const TruncatedLU& fact, double alpha, std::size_t row, std::size_t col,
                       double f) {
  const std::size_t k = fact.k, m = fact.rows(), n = fact.cols();
  if (alpha == 0.0) throw ParameterError("srp_test needs a nonzero alpha");
  if (!(f > 1.0)) throw ParameterError("tolerance f must exceed 1");
  if (k + row >= m || k + col >= n) throw ShapeError("alpha position outside the Schur frame");

  // Bordered factors: Lbar = [L11 0; l^T 1], Ubar = [U11 u; 0 alpha].
  DenseMatrix lbar(k + 1, k + 1), ubar(k + 1, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    lbar(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) lbar(i, j) = fact.lhat(i, j);
    for (std::size_t j = i; j < k; ++j) ubar(i, j) = fact.uhat(i, j);
    ubar(i, k) = fact.uhat(i, k + col);
    lbar(k, i) = fact.lhat(k + row, i);
  }
  lbar(k, k) = 1.0;
  ubar(k, k) = alpha;
  for (std::size_t i = 0; i < k; ++i) {
    if (ubar(i, i) == 0.0)
      throw SingularFactorError(i, "singular U11 diagonal at " + std::to_string(i));
  }

  SrpTestResult res;
  res.threshold = f / std::fabs(alpha);
  std::vector<double> x(k + 1);
  for (std::size_t t = 0; t <= k; ++t) {
    // Column t of Abar11^{-1}: forward then backward substitution on e_t.
    std::fill(x.begin(), x.end(), 0.0);
    x[t] = 1.0;
    for (std::size_t i = t + 1; i <= k; ++i) {
      double s = x[i];
      for (std::size_t j = t; j < i; ++j) s -= lbar(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t ii = k + 1; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t j = ii + 1; j <= k; ++j) s -= ubar(ii, j) * x[j];
      x[ii] = s / ubar(ii, ii);
    }
    for (std::size_t i = 0; i <= k; ++i) {
      const double v = std::fabs(x[i]);
      if (v > res.maxinv) {
        res.maxinv = v;
        res.inv_row = i;
        res.inv_col = t;
      }
    }
  }
  res.pass = res.maxinv <= res.threshold;
  return res;
}

TruncatedLU apply_swap(const DenseMatrix& a, const TruncatedLU& fact, std::size_t schur_row,
                       std::size_t schur_col, std::size_t to_row, std::size_t to_col,
                       bool* fallback_used) {
  const std::size_t m = fact.rows(), n = fact.cols(), k = fact.k;
  if (to_row > k || to_col > k) throw ParameterError("swap target outside the leading block");
  if (fallback_used) *fallback_used = false;
  if (to_row == k && to_col == k) return fact;
  if (k + schur_row >= m || k + schur_col >= n)
    throw ShapeError("swap source outside the Schur frame");

  TruncatedLU out = fact;
  out.sketch.reset();
  std::size_t d = k;
  if (to_row < k) {
    out.pi1.swap_positions(to_row, k + schur_row);
    out.lhat.row_swap(to_row, k + schur_row);
    d = std::min(d, to_row);
  }
  if (to_col < k) {
    out.pi2.swap_positions(to_col, k + schur_col);
    out.uhat.col_swap(to_col, k + schur_col);
    d = std::min(d, to_col);
  }

  const DenseMatrix p = permute_cols(permute_rows(a, out.pi1), out.pi2);
  if (!refactor_suffix(p, k, d, out.lhat, out.uhat)) {
    if (fallback_used) *fallback_used = true;
    refactor_leading_pivoted(a, k, out.pi1, out.pi2, out.lhat, out.uhat);
  }
  return out;
}

double leading_block_det(const TruncatedLU& fact) {
  double d = 1.0;
  for (std::size_t i = 0; i < fact.k; ++i) d *= std::fabs(fact.uhat(i, i));
  return d;
}

std::pair<TruncatedLU, SrpReport> srp(const DenseMatrix& a, const TruncatedLU& fact,
                                      const SrpConfig& config) {
  if (!(config.f > 1.0)) throw ParameterError("tolerance f must exceed 1");
  const std::size_t max_swaps = config.max_swaps ? config.max_swaps : 4 * std::max<std::size_t>(fact.k, 1);

  TruncatedLU cur = fact;
  AlphaMode mode = config.alpha_mode;
  if (mode == AlphaMode::sketched && !cur.sketch.has_value()) mode = AlphaMode::exact;

  SrpReport report;
  report.det_trace.push_back(leading_block_det(cur));

  while (true) {
    const AlphaLocation loc = locate_alpha(a, cur, mode);
    if (!loc.present || loc.value == 0.0) {
      report.passed = true;
      report.final_maxinv = 0.0;
      report.final_threshold = std::numeric_limits<double>::infinity();
      if (loc.present) report.alpha_trace.push_back({loc.value, loc.row, loc.col});
      break;
    }
    report.alpha_trace.push_back({loc.value, loc.row, loc.col});

    const SrpTestResult test = srp_test(cur, loc.value, loc.row, loc.col, config.f);
    if (test.pass) {
      if (mode == AlphaMode::sketched) {
        // A sketched alpha can undershoot the true maximum; confirm exactly.
        mode = AlphaMode::exact;
        continue;
      }
      report.passed = true;
      report.final_maxinv = test.maxinv;
      report.final_threshold = test.threshold;
      break;
    }
    if (report.swaps >= max_swaps) throw SwapCapError(std::move(report));

    // Inverse row indexes the column to eject, inverse column the row.
    const std::size_t to_row = test.inv_col < cur.k ? test.inv_col : cur.k;
    const std::size_t to_col = test.inv_row < cur.k ? test.inv_row : cur.k;
    bool fb = false;
    cur = apply_swap(a, cur, loc.row, loc.col, to_row, to_col, &fb);
    if (fb) ++report.fallback_refactorizations;
    ++report.swaps;
    report.det_trace.push_back(leading_block_det(cur));
    mode = AlphaMode::exact;  // the sketch no longer matches the factors
  }
  return {std::move(cur), std::move(report)};
}

}  // namespace srlu
