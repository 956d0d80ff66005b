// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace srlu {

namespace {

constexpr std::size_t kOracleCap = 2000;
constexpr std::size_t kMaxSweeps = 64;
constexpr double kOffTol = 1e-15;

// Orthogonalizes the columns of w in place by Jacobi rotations, accumulating
// the rotations into v (so w_in = w_out * v^T throughout).
void hestenes(DenseMatrix& w, DenseMatrix& v) {
  const std::size_t m = w.rows(), n = w.cols();
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off_max = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double aii = 0.0, ajj = 0.0, g = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          const double wi = w(r, i), wj = w(r, j);
          aii += wi * wi;
          ajj += wj * wj;
          g += wi * wj;
        }
        const double denom = std::sqrt(aii) * std::sqrt(ajj);
        if (denom == 0.0 || std::fabs(g) <= kOffTol * denom) continue;
        off_max = std::max(off_max, std::fabs(g) / denom);

        const double zeta = (ajj - aii) / (2.0 * g);
        double t;
        if (std::fabs(zeta) > 1e150) {
          t = 1.0 / (2.0 * zeta);
        } else {
          t = ((zeta >= 0.0) ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const double wi = w(r, i), wj = w(r, j);
          w(r, i) = c * wi - s * wj;
          w(r, j) = s * wi + c * wj;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vi = v(r, i), vj = v(r, j);
          v(r, i) = c * vi - s * vj;
          v(r, j) = s * vi + c * vj;
        }
      }
    }
    if (off_max <= kOffTol) break;
  }
}

SvdResult svd_tall(const DenseMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  DenseMatrix w = a;
  DenseMatrix v = DenseMatrix::identity(n);
  hestenes(w, v);

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += w(r, j) * w(r, j);
    sig[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  SvdResult out;
  out.u = DenseMatrix(m, n);
  out.v = DenseMatrix(n, n);
  out.sigma.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.sigma.values[j] = sig[src];
    if (sig[src] > 0.0) {
      const double inv = 1.0 / sig[src];
      for (std::size_t r = 0; r < m; ++r) out.u(r, j) = w(r, src) * inv;
    }
    for (std::size_t r = 0; r < n; ++r) out.v(r, j) = v(r, src);
  }
  return out;
}

}  // namespace

SvdResult svd_oracle(const DenseMatrix& a) {
  const std::size_t p = std::min(a.rows(), a.cols());
  if (p > kOracleCap) {
    throw CapacityError("svd_oracle supports min(m,n) <= " + std::to_string(kOracleCap) +
                        ", got " + std::to_string(p));
  }
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(a.transposed());
  return SvdResult{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

DenseMatrix truncated_svd(const DenseMatrix& a, std::size_t s) {
  const std::size_t p = std::min(a.rows(), a.cols());
  if (s < 1 || s > p) {
    throw ParameterError("truncation rank " + std::to_string(s) + " outside [1, " +
                         std::to_string(p) + "]");
  }
  SvdResult f = svd_oracle(a);
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t t = 0; t < s; ++t) {
    const double sv = f.sigma[t];
    if (sv == 0.0) break;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double ui = f.u(i, t) * sv;
      if (ui == 0.0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += ui * f.v(j, t);
    }
  }
  return out;
}

DenseMatrix pseudo_inverse(const DenseMatrix& a) {
  SvdResult f = svd_oracle(a);
  const std::size_t p = f.sigma.size();
  const double cutoff =
      f.sigma.size() ? f.sigma[0] * 1e-15 * static_cast<double>(std::max(a.rows(), a.cols())) : 0.0;
  // pinv = v * diag(1/sigma) * u^T, built as a sum of rank-1 terms.
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t t = 0; t < p; ++t) {
    if (f.sigma[t] <= cutoff || f.sigma[t] == 0.0) continue;
    const double inv = 1.0 / f.sigma[t];
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double vi = f.v(i, t) * inv;
      if (vi == 0.0) continue;
      for (std::size_t j = 0; j < a.rows(); ++j) out(i, j) += vi * f.u(j, t);
    }
  }
  return out;
}

}  // namespace srlu
