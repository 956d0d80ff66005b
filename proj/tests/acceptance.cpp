// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Network-dependent reproduction of published reference errors is
// opt-in through SRLU_NET_TESTS=1 (it downloads two SuiteSparse matrices).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "file_formats.hpp"
#include "oracles.hpp"
#include "srlu/diagnostics.hpp"
#include "srlu/extensions.hpp"
#include "srlu/generators.hpp"
#include "srlu/srp.hpp"
#include "srlu/svd.hpp"
#include "srlu/trlucp.hpp"
#include "srlu/tuning.hpp"

using srlu::AlphaLocation;
using srlu::AlphaMode;
using srlu::CurFactor;
using srlu::DenseMatrix;
using srlu::SrpConfig;
using srlu::SrpReport;
using srlu::TruncatedLU;

namespace {

struct SuiteCase {
  std::string name;
  DenseMatrix a;
  std::size_t k = 0;
  TruncatedLU fact;       // post-SRP
  SrpReport srp_report;
  std::vector<double> sigma;  // singular values of a
  bool srp_capped = false;
};

struct Outcome {
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

TruncatedLU run_pipeline(const DenseMatrix& a, std::size_t k, std::size_t b, std::uint64_t seed,
                         double f, SrpReport* rep_out, bool* capped) {
  srlu::TrlucpOptions opts;
  opts.k = k;
  opts.b = b;
  opts.seed = seed;
  srlu::FactorOutcome out = srlu::trlucp(a, opts);
  SrpConfig cfg;
  cfg.f = f;
  try {
    auto [fact, rep] = srlu::srp(a, out.factorization, cfg);
    if (rep_out) *rep_out = rep;
    return fact;
  } catch (const srlu::SwapCapError& e) {
    if (capped) *capped = true;
    if (rep_out) *rep_out = e.report();
    return out.factorization;
  }
}

std::vector<SuiteCase> build_suite() {
  const std::vector<std::pair<std::size_t, std::size_t>> sizes = {
      {80, 80}, {100, 80}, {128, 128}, {160, 200}, {300, 240}, {100, 300}};
  const std::vector<std::size_t> ranks = {4, 16, 64};
  const char* kinds[] = {"decay08", "decay095", "rank", "banded"};

  std::vector<SuiteCase> suite;
  std::uint64_t seed = 1;
  std::size_t kind_idx = 0;
  for (const auto& [m, n] : sizes) {
    for (std::size_t k : ranks) {
      for (int rep = 0; rep < 3 && suite.size() < 50; ++rep, ++seed) {
        const char* kind = kinds[kind_idx++ % 4];
        SuiteCase c;
        c.k = k;
        std::ostringstream nm;
        nm << kind << "-" << m << "x" << n << "-k" << k << "-s" << seed;
        c.name = nm.str();
        if (std::string(kind) == "decay08") {
          c.a = srlu::gen_decay(m, n, 0.8, seed);
        } else if (std::string(kind) == "decay095") {
          c.a = srlu::gen_decay(m, n, 0.95, seed);
        } else if (std::string(kind) == "rank") {
          c.a = srlu::gen_rank(m, n, std::min(k + 10, std::min(m, n)), seed);
        } else {
          c.a = srlu::gen_banded(m, n, 2, seed);
        }
        c.fact = run_pipeline(c.a, k, std::min<std::size_t>(8, k), seed, 5.0, &c.srp_report,
                              &c.srp_capped);
        const srlu::SvdResult sv = srlu::svd_oracle(c.a);
        c.sigma = sv.sigma.values;
        suite.push_back(std::move(c));
      }
    }
  }
  return suite;
}

// --- criteria ---------------------------------------------------------------

Outcome c1_theorem1(const std::vector<SuiteCase>& suite) {
  Outcome o;
  std::size_t ok = 0;
  for (const SuiteCase& c : suite) {
    const double rf = srlu::frobenius_norm(srlu::residual_matrix(c.a, c.fact));
    const double sf = srlu::frobenius_norm(srlu::explicit_schur(c.a, c.fact));
    const double scale = srlu::frobenius_norm(c.a);
    const bool eq = std::fabs(rf - sf) <= 1e-12 * std::max(rf, sf) ||
                    std::fabs(rf - sf) <= 1e-13 * scale;
    if (eq) {
      ++ok;
    } else if (o.detail.empty()) {
      o.detail = "first failure " + c.name;
    }
  }
  o.pass = ok == suite.size();
  o.detail = std::to_string(ok) + "/" + std::to_string(suite.size()) + " identities within 1e-12" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome c2_exact_rank() {
  Outcome o;
  std::size_t ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t r = 2 + seed % 7;
    const std::size_t m = 30 + 4 * seed, n = 30 + 3 * seed;
    const std::size_t k = r + seed % 4;
    const DenseMatrix a = srlu::gen_rank(m, n, r, 500 + seed);
    srlu::TrlucpOptions opts;
    opts.k = k;
    opts.b = std::min<std::size_t>(4, k);
    opts.seed = seed;
    const srlu::FactorOutcome out = srlu::trlucp(a, opts);
    const double rel = srlu::frobenius_norm(srlu::residual_matrix(a, out.factorization)) /
                       srlu::frobenius_norm(a);
    if (rel <= 1e-10) ++ok;
  }
  o.pass = ok == 20;
  o.detail = std::to_string(ok) + "/20 recoveries below 1e-10";
  return o;
}

Outcome c3_srp_postcondition(const std::vector<SuiteCase>& suite) {
  Outcome o;
  std::size_t ok = 0, capped = 0;
  for (const SuiteCase& c : suite) {
    if (c.srp_capped) {
      ++capped;
      continue;
    }
    const AlphaLocation loc = srlu::locate_alpha(c.a, c.fact, AlphaMode::exact);
    if (!loc.present || loc.value == 0.0) {
      ++ok;
      continue;
    }
    const srlu::SrpTestResult t = srlu::srp_test(c.fact, loc.value, loc.row, loc.col, 5.0);
    if (t.pass) ++ok;
  }

  std::size_t gaussian_zero = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    srlu::GaussianStream g(9000 + seed);
    const DenseMatrix a = srlu::gaussian_matrix(100, 100, g);
    SrpReport rep;
    run_pipeline(a, 16, 8, seed, 5.0, &rep, nullptr);
    if (rep.swaps == 0) ++gaussian_zero;
  }

  const DenseMatrix kahan = srlu::gen_kahan(256, 0.285);
  SrpReport krep;
  bool kcap = false;
  TruncatedLU kfact = run_pipeline(kahan, 32, 8, 7, 2.0, &krep, &kcap);
  bool kahan_ok = !kcap && krep.swaps <= 10;
  if (kahan_ok) {
    const AlphaLocation loc = srlu::locate_alpha(kahan, kfact, AlphaMode::exact);
    if (loc.present && loc.value != 0.0)
      kahan_ok = srlu::srp_test(kfact, loc.value, loc.row, loc.col, 2.0).pass;
  }

  o.pass = ok == suite.size() - capped && capped == 0 && gaussian_zero == 10 && kahan_ok;
  o.detail = std::to_string(ok) + "/" + std::to_string(suite.size()) +
             " exact re-checks pass; gaussian zero-swap " + std::to_string(gaussian_zero) +
             "/10; kahan swaps " + std::to_string(krep.swaps) +
             (kahan_ok ? " with condition met" : " FAILED");
  return o;
}

Outcome c4_alpha_bound(const std::vector<SuiteCase>& suite) {
  Outcome o;
  std::size_t ok = 0;
  for (const SuiteCase& c : suite) {
    const AlphaLocation loc = srlu::locate_alpha(c.a, c.fact, AlphaMode::exact);
    if (!loc.present) {
      ++ok;
      continue;
    }
    const double sig_k1 = c.k < c.sigma.size() ? c.sigma[c.k] : 0.0;
    const double bound = 5.0 * static_cast<double>(c.k + 1) * sig_k1;
    if (std::fabs(loc.value) <= bound * (1.0 + 1e-9) + 1e-13 * c.sigma[0]) {
      ++ok;
    } else if (o.detail.empty()) {
      o.detail = "violated on " + c.name;
    }
  }
  o.pass = ok == suite.size();
  o.detail = std::to_string(ok) + "/" + std::to_string(suite.size()) + " bounds hold" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome c5_det_growth(const std::vector<SuiteCase>& suite,
                      const std::vector<std::pair<SrpReport, double>>& extra) {
  Outcome o;
  std::size_t swaps_seen = 0, ok = 0;
  auto scan = [&](const SrpReport& rep, double f) {
    for (std::size_t i = 0; i + 1 < rep.det_trace.size(); ++i) {
      ++swaps_seen;
      if (rep.det_trace[i + 1] >= f * (1.0 - 1e-8) * rep.det_trace[i]) ++ok;
    }
  };
  for (const SuiteCase& c : suite) scan(c.srp_report, 5.0);
  for (const auto& [rep, f] : extra) scan(rep, f);
  o.pass = ok == swaps_seen;
  o.detail = std::to_string(ok) + "/" + std::to_string(swaps_seen) + " swaps grew |det| by >= f";
  if (swaps_seen == 0) o.detail += " (no swaps recorded anywhere)";
  return o;
}

Outcome c6_sketch_oracle() {
  Outcome o;
  std::size_t panels = 0, ok = 0;
  const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> shapes = {
      {16, 16, 8, 2}, {32, 32, 16, 4}, {48, 64, 16, 4}, {64, 64, 24, 8}};
  for (const auto& [m, n, k, b] : shapes) {
    for (int kind = 0; kind < 3; ++kind) {
      DenseMatrix a;
      const std::uint64_t seed = 40 + static_cast<std::uint64_t>(kind);
      if (kind == 0) a = srlu::gen_decay(m, n, 0.8, seed);
      else if (kind == 1) a = srlu::gen_rank(m, n, std::min(m, n), seed);
      else a = srlu::gen_banded(m, n, 3, seed);

      srlu::TrlucpOptions opts;
      opts.k = k;
      opts.b = b;
      opts.seed = seed;
      srlu::trlucp(a, opts, [&](const srlu::PanelSnapshot& snap) {
        ++panels;
        const DenseMatrix p = srlu::permute_cols(srlu::permute_rows(a, snap.pi1), snap.pi2);
        const DenseMatrix s_exact = oracles::brute_schur(p, snap.rank_done);
        const DenseMatrix omega3 =
            snap.sketch.omega.block(0, snap.rank_done, snap.sketch.p, m - snap.rank_done);
        const DenseMatrix expected = oracles::naive_matmul(omega3, s_exact);
        if (oracles::rel_diff(snap.sketch.r, expected) <= 1e-10) ++ok;
      });
    }
  }
  o.pass = panels > 0 && ok == panels;
  o.detail = std::to_string(ok) + "/" + std::to_string(panels) + " panel sketches match the oracle";
  return o;
}

Outcome c7_cur_bounds() {
  Outcome o;
  std::size_t bounds_ok = 0, boost_ok = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DenseMatrix a = srlu::gen_decay(200, 200, 0.95, 600 + seed);
    SrpReport rep;
    const TruncatedLU fact = run_pipeline(a, 40, 8, seed, 5.0, &rep, nullptr);
    const CurFactor cur = srlu::cur_exact(a, fact);
    const DenseMatrix p = srlu::permuted_input(a, fact);
    const double cur_f = srlu::frobenius_norm(srlu::subtract(p, srlu::cur_reconstruct(fact, cur)));
    const double cur_2 = srlu::spectral_norm(srlu::subtract(p, srlu::cur_reconstruct(fact, cur)));
    const double s_f = srlu::frobenius_norm(srlu::explicit_schur(a, fact));
    const double s_2 = srlu::spectral_norm(srlu::explicit_schur(a, fact));
    const double plain_f = srlu::frobenius_norm(srlu::residual_matrix(a, fact));
    if (cur_f <= s_f + 1e-10 * srlu::frobenius_norm(a) && cur_2 <= 2.0 * s_2 + 1e-9) ++bounds_ok;
    if (cur_f <= plain_f + 1e-10 * srlu::frobenius_norm(a)) ++boost_ok;
  }
  o.pass = bounds_ok == 5 && boost_ok == 5;
  o.detail = "theorem-3 bounds " + std::to_string(bounds_ok) + "/5; cur <= plain " +
             std::to_string(boost_ok) + "/5";
  return o;
}

Outcome c8_tsvd_competitive() {
  Outcome o;
  const std::vector<std::size_t> ranks = {10, 20, 40, 60};
  std::ostringstream detail;
  bool all_ok = true;
  std::vector<std::vector<double>> ratios(ranks.size());
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DenseMatrix a = srlu::gen_decay(200, 200, 0.8, 700 + seed);
    const srlu::SvdResult sv = srlu::svd_oracle(a);
    for (std::size_t ki = 0; ki < ranks.size(); ++ki) {
      const std::size_t k = ranks[ki];
      SrpReport rep;
      const TruncatedLU fact = run_pipeline(a, k, 8, seed, 5.0, &rep, nullptr);
      const CurFactor cur = srlu::cur_exact(a, fact);
      const DenseMatrix p = srlu::permuted_input(a, fact);
      const double err =
          srlu::frobenius_norm(srlu::subtract(p, srlu::cur_reconstruct(fact, cur)));
      double tail = 0.0;
      for (std::size_t t = k; t < sv.sigma.size(); ++t) tail += sv.sigma[t] * sv.sigma[t];
      ratios[ki].push_back(err / std::sqrt(tail));
    }
  }
  for (std::size_t ki = 0; ki < ranks.size(); ++ki) {
    std::sort(ratios[ki].begin(), ratios[ki].end());
    const double median = ratios[ki][2];
    if (median > 3.0) all_ok = false;
    detail << "k=" << ranks[ki] << " median " << median << "x; ";
  }
  o.pass = all_ok;
  o.detail = detail.str() + "(limit 3x TSVD)";
  return o;
}

Outcome c9_spectral_fidelity() {
  Outcome o;
  // As stated (decay 0.8, k = 24) no index satisfies the 1e-3 separation
  // filter, so the stated check is vacuous; a decay-0.5 companion exercises
  // the same fidelity claim non-vacuously at the same size and rank.
  std::size_t qualifying = 0, ok = 0, qualifying08 = 0;
  for (double d : {0.8, 0.5}) {
    const DenseMatrix a = srlu::gen_decay(128, 128, d, 800);
    SrpReport rep;
    const TruncatedLU fact = run_pipeline(a, 24, 8, 800, 5.0, &rep, nullptr);
    const srlu::SvdResult sva = srlu::svd_oracle(a);
    const srlu::SvdResult svlu = srlu::svd_oracle(srlu::matmul(fact.lhat, fact.uhat));
    const double sig_k1 = sva.sigma[24];
    for (std::size_t j = 0; j < 24; ++j) {
      if (sig_k1 / sva.sigma[j] > 1e-3) continue;
      ++qualifying;
      if (d == 0.8) ++qualifying08;
      if (std::fabs(svlu.sigma[j] / sva.sigma[j] - 1.0) <= 0.01) ++ok;
    }
  }
  o.pass = ok == qualifying;
  o.detail = std::to_string(ok) + "/" + std::to_string(qualifying) +
             " qualifying indices within 1% (decay 0.8 contributes " +
             std::to_string(qualifying08) + ": its sigma_{k+1}/sigma_j never reaches 1e-3; " +
             "the decay-0.5 companion carries the non-vacuous check)";
  return o;
}

Outcome c10_thm2_thm7(const std::vector<SuiteCase>& suite) {
  Outcome o;
  std::size_t cases = 0, ok2 = 0, ok7 = 0;
  for (const SuiteCase& c : suite) {
    if (std::max(c.a.rows(), c.a.cols()) > 128) continue;
    ++cases;
    const DenseMatrix lu = srlu::matmul(c.fact.lhat, c.fact.uhat);
    const srlu::SvdResult svlu = srlu::svd_oracle(lu);
    const double s2 = srlu::spectral_norm(srlu::explicit_schur(c.a, c.fact));
    const double sk_lu = svlu.sigma[c.fact.k - 1];
    bool t2 = true;
    for (std::size_t j = 0; j < c.fact.k; ++j) {
      const double sa = c.sigma[j];
      const double sl = svlu.sigma[j];
      if (sa <= 1e-14 * c.sigma[0]) continue;
      if (sl <= 0.0 || sk_lu <= 0.0) continue;
      const double rhs = sl * (1.0 + (1.0 + s2 / sk_lu) * (s2 / sa));
      if (sa > rhs * (1.0 + 1e-9)) t2 = false;
    }
    if (t2) ++ok2;

    const CurFactor cur = srlu::cur_exact(c.a, c.fact);
    const srlu::SvdResult svc = srlu::svd_oracle(srlu::cur_reconstruct(c.fact, cur));
    bool t7 = true;
    for (std::size_t j = 0; j < c.fact.k; ++j) {
      if (!(c.sigma[j] * c.sigma[j] > 2.0 * s2 * s2)) continue;
      if (svc.sigma[j] > c.sigma[j] * (1.0 + 1e-9)) t7 = false;
    }
    if (t7) ++ok7;
  }
  o.pass = ok2 == cases && ok7 == cases;
  o.detail = "thm2 " + std::to_string(ok2) + "/" + std::to_string(cases) + ", thm7 " +
             std::to_string(ok7) + "/" + std::to_string(cases) + " (suite cases <= 128)";
  return o;
}

Outcome c11_online(std::vector<std::pair<SrpReport, double>>& extra) {
  Outcome o;
  std::size_t ok = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DenseMatrix full = srlu::gen_decay(100, 100, 0.8, 900 + seed);
    const DenseMatrix head = full.block(0, 0, 80, 100);
    const DenseMatrix tail = full.block(80, 0, 20, 100);

    srlu::TrlucpOptions opts;
    opts.k = 16;
    opts.b = 8;
    opts.seed = seed;
    const srlu::FactorOutcome base = srlu::trlucp(head, opts);
    SrpConfig cfg;
    cfg.f = 5.0;
    auto [updated, rep] = srlu::append_rows(head, base.factorization, tail, 1.0, cfg);
    extra.emplace_back(rep, cfg.f);

    const double upd_err = srlu::frobenius_norm(srlu::residual_matrix(full, updated));
    SrpReport scratch_rep;
    const TruncatedLU scratch = run_pipeline(full, 16, 8, seed, 5.0, &scratch_rep, nullptr);
    const double scratch_err = srlu::frobenius_norm(srlu::residual_matrix(full, scratch));
    if (upd_err <= 1.5 * scratch_err) ++ok;
  }

  // Zero-row append must be an exact no-op.
  const DenseMatrix a = srlu::gen_decay(40, 40, 0.8, 950);
  srlu::TrlucpOptions opts;
  opts.k = 8;
  opts.b = 4;
  opts.seed = 1;
  const srlu::FactorOutcome base = srlu::trlucp(a, opts);
  auto [same, rep0] = srlu::append_rows(a, base.factorization, DenseMatrix(0, 40), 1.0, SrpConfig{});
  const bool noop = same.pi1 == base.factorization.pi1 && same.pi2 == base.factorization.pi2 &&
                    same.lhat.data() == base.factorization.lhat.data() &&
                    same.uhat.data() == base.factorization.uhat.data();

  o.pass = ok == 5 && noop;
  o.detail = std::to_string(ok) + "/5 appends within 1.5x from-scratch; zero-row no-op " +
             (noop ? "exact" : "FAILED");
  return o;
}

Outcome c12_flop_model() {
  Outcome o;
  const std::size_t m = 400, n = 400, k = 64, b = 16, c = 8;
  srlu::GaussianStream g(31337);
  const DenseMatrix a = srlu::gaussian_matrix(m, n, g);
  srlu::TrlucpOptions opts;
  opts.k = k;
  opts.b = b;
  opts.c = c;
  opts.seed = 1;
  const srlu::FactorOutcome out = srlu::trlucp(a, opts);
  const double p = static_cast<double>(b + c);
  const double model = 2.0 * p * m * n + (m + n) * static_cast<double>(k) * k;
  const double ratio = static_cast<double>(out.flop_count) / model;
  o.pass = ratio >= 0.9 && ratio <= 1.1;
  std::ostringstream s;
  s << "measured/model = " << ratio << " at m=n=400, k=64, b=16";
  o.detail = s.str();
  return o;
}

Outcome c13_blocksize() {
  Outcome o;
  std::size_t argmin_ok = 0, dims_ok = 0;
  srlu::GaussianStream g(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 6 + (g.next_u64() % 100);
    const std::size_t m = k + (g.next_u64() % 1500);
    const std::size_t n = k + (g.next_u64() % 1500);
    srlu::BlockSizeModel model;
    model.cache_words = std::exp2(12.0 + static_cast<double>(g.next_u64() % 9));
    model.t_flop = 0.25 + g.next_uniform();
    model.t_mem = 1.0 + 60.0 * g.next_uniform();
    const std::size_t picked = srlu::choose_block_size(m, n, k, model, 1, k);
    std::size_t best = 1;
    double best_t = srlu::predict_time(m, n, k, 1, model);
    for (std::size_t bb = 2; bb <= k; ++bb) {
      const double t = srlu::predict_time(m, n, k, bb, model);
      if (t < best_t) {
        best_t = t;
        best = bb;
      }
    }
    if (picked == best) ++argmin_ok;
  }
  for (int trial = 0; trial < 50; ++trial) {
    const double p = 1.0 + static_cast<double>(g.next_u64() % 600);
    const double cache = 3.0 + static_cast<double>(g.next_u64() % (1u << 24));
    const srlu::SketchBlockDims d = srlu::sketch_block_dims(p, cache);
    if (d.s * d.l + d.l * d.b + d.s * d.b <= cache) ++dims_ok;
  }
  o.pass = argmin_ok == 20 && dims_ok == 50;
  o.detail = "argmin " + std::to_string(argmin_ok) + "/20, cache constraint " +
             std::to_string(dims_ok) + "/50";
  return o;
}

// Spectral norm of (pi1 A pi2^T - lhat M uhat) by operator-form power
// iteration; avoids materializing the residual for large inputs.
double cur_spectral_error(const DenseMatrix& a, const TruncatedLU& f, const CurFactor& cur) {
  const std::size_t m = a.rows(), n = a.cols(), k = f.k;
  const DenseMatrix mu = srlu::matmul(cur.m_mid, f.uhat);  // k x n
  const srlu::PermutationVector& p1 = f.pi1;
  const srlu::PermutationVector& p2 = f.pi2;

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n))), av(m), w(n), tmp(k);
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t t = 0; t < k; ++t) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += mu(t, j) * x[j];
      tmp[t] = s;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      const double* arow = a.data().data() + p1[i] * n;
      for (std::size_t j = 0; j < n; ++j) s += arow[p2[j]] * x[j];
      for (std::size_t t = 0; t < k; ++t) s -= f.lhat(i, t) * tmp[t];
      y[i] = s;
    }
  };
  auto apply_t = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t t = 0; t < k; ++t) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += f.lhat(i, t) * x[i];
      tmp[t] = s;
    }
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double xi = x[i];
      const double* arow = a.data().data() + p1[i] * n;
      for (std::size_t j = 0; j < n; ++j) y[j] += arow[p2[j]] * xi;
    }
    for (std::size_t t = 0; t < k; ++t) {
      const double s = tmp[t];
      for (std::size_t j = 0; j < n; ++j) y[j] -= mu(t, j) * s;
    }
  };

  double sigma = 0.0, prev = -1.0;
  for (int iter = 0; iter < 600; ++iter) {
    apply(v, av);
    double nav = 0.0;
    for (double x : av) nav += x * x;
    sigma = std::sqrt(nav);
    if (sigma == 0.0) return 0.0;
    apply_t(av, w);
    double nw = 0.0;
    for (double x : w) nw += x * x;
    nw = std::sqrt(nw);
    if (nw == 0.0) return sigma;
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / nw;
    if (prev >= 0.0 && std::fabs(sigma - prev) <= 1e-7 * sigma) break;
    prev = sigma;
  }
  return sigma;
}

Outcome c14_table1() {
  Outcome o;
  const char* flag = std::getenv("SRLU_NET_TESTS");
  if (!flag || std::string(flag) != "1") {
    o.skipped = true;
    o.detail = "opt-in (set SRLU_NET_TESTS=1); published-error reproduction needs a download";
    return o;
  }
  const char* dir_env = std::getenv("SRLU_NET_DIR");
  const std::string dir = dir_env ? dir_env : "/tmp/srlu_suitesparse";
  std::filesystem::create_directories(dir);
  auto fetch = [&](const std::string& group, const std::string& name) -> std::string {
    const std::string mtx = dir + "/" + name + "/" + name + ".mtx";
    if (!std::filesystem::exists(mtx)) {
      const std::string cmd = "curl -Ls https://suitesparse-collection-website.herokuapp.com/MM/" +
                              group + "/" + name + ".tar.gz | tar -xz -C " + dir;
      if (std::system(cmd.c_str()) != 0) throw std::runtime_error("download failed for " + name);
    }
    return mtx;
  };

  struct Ref {
    std::string group, name;
    std::size_t k;
    double expected;
  };
  const std::vector<Ref> refs = {{"Grund", "S80PI_n1", 63, 2.84}, {"Meszaros", "deter3", 127, 8.30}};
  std::ostringstream detail;
  bool all_ok = true;
  for (const Ref& ref : refs) {
    const srlucli::LoadedMatrix lm = srlucli::load_matrix_file(fetch(ref.group, ref.name));
    const DenseMatrix a(lm.rows, lm.cols, lm.data);
    std::vector<double> errs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SrpReport rep;
      const TruncatedLU fact = run_pipeline(a, ref.k, 16, seed, 5.0, &rep, nullptr);
      const CurFactor cur = srlu::cur_exact(a, fact);
      errs.push_back(cur_spectral_error(a, fact, cur));
    }
    double mean = 0.0;
    for (double e : errs) mean += e;
    mean /= static_cast<double>(errs.size());
    const bool ok = mean >= 0.8 * ref.expected && mean <= 1.2 * ref.expected;
    all_ok = all_ok && ok;
    detail << ref.name << " mean " << mean << " vs " << ref.expected << (ok ? " ok; " : " FAIL; ");
  }
  o.pass = all_ok;
  o.detail = detail.str();
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  std::cout << "building the shared factorization suite (50 cases)..." << std::endl;
  const std::vector<SuiteCase> suite = build_suite();

  // Reports from runs outside the shared suite that also feed the
  // determinant-growth criterion.
  std::vector<std::pair<SrpReport, double>> extra_reports;
  {
    const DenseMatrix kahan = srlu::gen_kahan(256, 0.285);
    SrpReport krep;
    bool kcap = false;
    run_pipeline(kahan, 32, 8, 7, 2.0, &krep, &kcap);
    extra_reports.emplace_back(krep, 2.0);
  }
  // Randomized complete pivoting usually needs no corrective swaps at all, so
  // the determinant-growth criterion also measures appends of dominant rows
  // that are guaranteed to force swaps.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    srlu::GaussianStream g(7700 + seed);
    const DenseMatrix a = srlu::gaussian_matrix(60, 50, g);
    srlu::TrlucpOptions opts;
    opts.k = 8;
    opts.b = 4;
    opts.seed = seed;
    const srlu::FactorOutcome base = srlu::trlucp(a, opts);
    DenseMatrix spike(1, 50);
    spike(0, base.factorization.pi2[20 + seed]) = 1e5;
    SrpConfig cfg;
    cfg.f = 5.0;
    auto [upd, rep] = srlu::append_rows(a, base.factorization, spike, 1.0, cfg);
    extra_reports.emplace_back(rep, cfg.f);
  }

  const Outcome c11_outcome = c11_online(extra_reports);

  criteria.emplace_back("theorem-1 residual identity", [&] { return c1_theorem1(suite); });
  criteria.emplace_back("exact-rank recovery", [] { return c2_exact_rank(); });
  criteria.emplace_back("srp post-condition", [&] { return c3_srp_postcondition(suite); });
  criteria.emplace_back("alpha bound", [&] { return c4_alpha_bound(suite); });
  criteria.emplace_back("determinant growth per swap",
                        [&] { return c5_det_growth(suite, extra_reports); });
  criteria.emplace_back("sketch-update oracle", [] { return c6_sketch_oracle(); });
  criteria.emplace_back("cur bounds", [] { return c7_cur_bounds(); });
  criteria.emplace_back("tsvd competitiveness", [] { return c8_tsvd_competitive(); });
  criteria.emplace_back("spectral fidelity", [] { return c9_spectral_fidelity(); });
  criteria.emplace_back("theorem-2/7 inequalities", [&] { return c10_thm2_thm7(suite); });
  criteria.emplace_back("online update", [&] { return c11_outcome; });
  criteria.emplace_back("flop model", [] { return c12_flop_model(); });
  criteria.emplace_back("block-size advisor", [] { return c13_blocksize(); });
  criteria.emplace_back("published-error reproduction (network)", [] { return c14_table1(); });

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const char* verdict = o.skipped ? "SKIP" : (o.pass ? "PASS" : "FAIL");
    if (!o.pass && !o.skipped) ++failures;
    std::cout << "C" << (i + 1 < 10 ? "0" : "") << (i + 1) << " " << verdict << "  "
              << criteria[i].first << ": " << o.detail << std::endl;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
