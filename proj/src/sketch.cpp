// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/sketch.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace srlu {

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  have_spare_ = true;
  return rad * std::cos(ang);
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, GaussianStream& g) {
  DenseMatrix m(rows, cols);
  for (double& v : m.data()) v = g.next();
  return m;
}

SketchState init_sketch(const DenseMatrix& a, std::size_t b, std::size_t c, std::uint64_t seed) {
  if (b < 1) throw ParameterError("block size must be at least 1");
  const std::size_t p = b + c;
  if (p > a.rows()) {
    throw ParameterError("oversampled row count p = " + std::to_string(p) +
                         " exceeds m = " + std::to_string(a.rows()));
  }
  SketchState s;
  s.p = p;
  s.c = c;
  s.seed = seed;
  s.consumed = 0;
  GaussianStream g(seed);
  s.omega = gaussian_matrix(p, a.rows(), g);
  s.r = matmul(s.omega, a);
  return s;
}

void sketch_update(SketchState& state, const DenseMatrix& l22, const DenseMatrix& l32,
                   const DenseMatrix& u23) {
  const std::size_t b = l22.rows();
  const std::size_t m = state.omega.cols();
  if (l22.cols() != b) throw ShapeError("l22 must be square");
  if (state.consumed + b > m) throw ShapeError("update advances past the last row");
  if (l32.rows() != m - state.consumed - b || (l32.rows() > 0 && l32.cols() != b))
    throw ShapeError("l32 block mismatch");
  if (u23.rows() != b) throw ShapeError("u23 row mismatch");
  if (state.r.cols() < b || u23.cols() != state.r.cols() - b) throw ShapeError("u23 col mismatch");

  const DenseMatrix omega2 = state.omega.block(0, state.consumed, state.p, b);
  const DenseMatrix omega3 =
      state.omega.block(0, state.consumed + b, state.p, m - state.consumed - b);

  DenseMatrix coeff = matmul(omega2, l22);
  if (l32.rows() > 0) {
    const DenseMatrix o3l = matmul(omega3, l32);
    for (std::size_t i = 0; i < coeff.size(); ++i) coeff.data()[i] += o3l.data()[i];
  }
  DenseMatrix r2 = state.r.block(0, b, state.p, state.r.cols() - b);
  const DenseMatrix upd = matmul(coeff, u23);
  for (std::size_t i = 0; i < r2.size(); ++i) r2.data()[i] -= upd.data()[i];

  state.r = std::move(r2);
  state.consumed += b;
}

}  // namespace srlu
