// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace srlu {

namespace {

void check_model(const BlockSizeModel& model) {
  if (!(model.cache_words > 0.0)) throw ParameterError("cache size must be positive");
  if (!(model.t_flop > 0.0) || !(model.t_mem > 0.0))
    throw ParameterError("per-operation costs must be positive");
}

}  // namespace

double predict_time(std::size_t m_, std::size_t n_, std::size_t k_, std::size_t b_,
                    const BlockSizeModel& model) {
  check_model(model);
  if (b_ < 1 || b_ > k_ || k_ > std::min(m_, n_))
    throw ParameterError("need 1 <= b <= k <= min(m,n)");
  const double m = static_cast<double>(m_);
  const double n = static_cast<double>(n_);
  const double k = static_cast<double>(k_);
  const double b = static_cast<double>(b_);
  const double cache = model.cache_words;

  const double flop_bracket =
      (m + n - k) * (k * k - k * b) - (4.0 / 3.0) * k * k * k + 2.0 * b * k * k -
      (2.0 / 3.0) * b * b * k;
  const double mem_bracket =
      (m + n - k) * (k * k / b - k) - (4.0 / 3.0) * k * k * k / b + 2.0 * k * k -
      (2.0 / 3.0) * b * k;
  const double root = std::sqrt(b * b + cache) - b;
  const double mem_factor = cache / (root * root);
  return flop_bracket * model.t_flop + mem_bracket * mem_factor * model.t_mem;
}

std::size_t choose_block_size(std::size_t m, std::size_t n, std::size_t k,
                              const BlockSizeModel& model, std::size_t b_lo, std::size_t b_hi) {
  check_model(model);
  if (k < 1 || k > std::min(m, n)) throw ParameterError("need 1 <= k <= min(m,n)");
  if (b_lo == 0 && b_hi == 0) {
    // Default range keeps the model brackets in their physically meaningful
    // regime; outside it they can go negative.
    b_lo = std::min<std::size_t>(4, k);
    b_hi = std::min<std::size_t>(64, k);
  }
  if (b_lo < 1 || b_hi < b_lo || b_hi > k) throw ParameterError("invalid block-size range");

  std::size_t best = b_lo;
  double best_t = predict_time(m, n, k, b_lo, model);
  for (std::size_t b = b_lo + 1; b <= b_hi; ++b) {
    const double t = predict_time(m, n, k, b, model);
    if (t < best_t) {
      best_t = t;
      best = b;
    }
  }
  return best;
}

SketchBlockDims sketch_block_dims(double p, double cache_words) {
  if (!(p >= 1.0)) throw ParameterError("p must be at least 1");
  if (!(cache_words >= 3.0)) throw ParameterError("cache must hold at least 3 words");
  const double balanced = std::sqrt(cache_words / 3.0);
  SketchBlockDims d;
  if (p < balanced) {
    d.s = p;
    // sqrt(p^2+M) - p evaluated in the cancellation-free form M/(q+p).
    const double q = std::sqrt(p * p + cache_words);
    d.b = cache_words / (q + p);
  } else {
    d.s = balanced;
    d.b = balanced;
  }
  d.l = d.b;
  // Algebraically s*l + l*b + s*b == M at the optimum; nudge down a few ulps
  // if rounding tipped it over the cache budget.
  for (int guard = 0; guard < 8; ++guard) {
    if (d.s * d.l + d.l * d.b + d.s * d.b <= cache_words) break;
    d.b = std::nextafter(d.b, 0.0);
    d.l = d.b;
    if (d.s > d.b) continue;
    d.s = std::nextafter(d.s, 0.0);
  }
  return d;
}

std::size_t default_block_size(std::size_t m, std::size_t n, std::size_t k) {
  return choose_block_size(m, n, k, BlockSizeModel{});
}

}  // namespace srlu
