// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/generators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "srlu/sketch.hpp"

namespace srlu {

namespace {

// Householder QR, Q accumulated explicitly.
DenseMatrix qr_orthogonal(DenseMatrix a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<double>> vs;
  vs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<double> v(n - t);
    double xn = 0.0;
    for (std::size_t r = t; r < n; ++r) {
      v[r - t] = a(r, t);
      xn += v[r - t] * v[r - t];
    }
    xn = std::sqrt(xn);
    v[0] += (v[0] >= 0.0 ? xn : -xn);
    double vn2 = 0.0;
    for (double x : v) vn2 += x * x;
    if (vn2 > 0.0) {
      for (std::size_t j = t; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t r = t; r < n; ++r) dot += v[r - t] * a(r, j);
        const double f = 2.0 * dot / vn2;
        for (std::size_t r = t; r < n; ++r) a(r, j) -= f * v[r - t];
      }
    }
    vs.push_back(std::move(v));
  }
  DenseMatrix q = DenseMatrix::identity(n);
  for (std::size_t tt = n; tt-- > 0;) {
    const std::vector<double>& v = vs[tt];
    double vn2 = 0.0;
    for (double x : v) vn2 += x * x;
    if (vn2 == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t r = tt; r < n; ++r) dot += v[r - tt] * q(r, j);
      const double f = 2.0 * dot / vn2;
      for (std::size_t r = tt; r < n; ++r) q(r, j) -= f * v[r - tt];
    }
  }
  return q;
}

}  // namespace

DenseMatrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  GaussianStream g(seed);
  return qr_orthogonal(gaussian_matrix(n, n, g));
}

DenseMatrix gen_decay(std::size_t m, std::size_t n, double d, std::uint64_t seed) {
  if (!(d > 0.0) || !(d < 1.0)) throw ParameterError("decay rate must lie in (0, 1)");
  if (m == 0 || n == 0) throw ParameterError("empty shape");
  const std::size_t p = std::min(m, n);
  GaussianStream g(seed);
  const DenseMatrix q1 = qr_orthogonal(gaussian_matrix(m, m, g));
  const DenseMatrix q2 = qr_orthogonal(gaussian_matrix(n, n, g));
  DenseMatrix a(m, n);
  std::vector<double> sigma(p);
  double s = 1.0;
  for (std::size_t t = 0; t < p; ++t, s *= d) sigma[t] = s;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < p; ++t) {
      const double f = q1(i, t) * sigma[t];
      for (std::size_t j = 0; j < n; ++j) a(i, j) += f * q2(j, t);
    }
  return a;
}

DenseMatrix gen_rank(std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed) {
  if (r < 1 || r > std::min(m, n)) throw ParameterError("rank outside [1, min(m,n)]");
  GaussianStream g(seed);
  const DenseMatrix g1 = gaussian_matrix(m, r, g);
  const DenseMatrix g2 = gaussian_matrix(r, n, g);
  return matmul(g1, g2);
}

DenseMatrix gen_banded(std::size_t m, std::size_t n, std::size_t bandwidth, std::uint64_t seed) {
  if (m == 0 || n == 0) throw ParameterError("empty shape");
  GaussianStream g(seed);
  DenseMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t dist = i > j ? i - j : j - i;
      if (dist <= bandwidth) a(i, j) = g.next();
    }
  return a;
}

DenseMatrix gen_kahan(std::size_t n, double c) {
  if (n == 0) throw ParameterError("empty shape");
  if (!(c > 0.0) || !(c < 1.0)) throw ParameterError("kahan parameter must lie in (0, 1)");
  const double s = std::sqrt(1.0 - c * c);
  DenseMatrix a(n, n);
  double row_scale = 1.0;
  for (std::size_t i = 0; i < n; ++i, row_scale *= s) {
    a(i, i) = row_scale;
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = -c * row_scale;
  }
  return a;
}

}  // namespace srlu
