// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "srlu/svd.hpp"

namespace srlu {

namespace {

// Equality within rel tolerance, or both at roundoff level relative to scale.
bool norm_equal(double lhs, double rhs, double scale) {
  const double diff = std::fabs(lhs - rhs);
  if (diff <= diag::kThm1RelTol * std::max(lhs, rhs)) return true;
  return diff <= diag::kNoiseFloor * scale;
}

bool sigma_is_zero(double sigma_k1, double sigma_1) {
  return sigma_k1 <= diag::kSigmaZeroRel * sigma_1;
}

std::uint64_t count_over(const DenseMatrix& m, double threshold) {
  std::uint64_t c = 0;
  for (double v : m.data())
    if (std::fabs(v) > threshold) ++c;
  return c;
}

}  // namespace

DiagnosticsReport residual_report(const DenseMatrix& a, const TruncatedLU& fact,
                                  const CurFactor* cur) {
  DiagnosticsReport rep;
  rep.m = a.rows();
  rep.n = a.cols();
  rep.k = fact.k;

  const DenseMatrix res = residual_matrix(a, fact);
  const DenseMatrix s = explicit_schur(a, fact);
  const double a_f = frobenius_norm(a);

  rep.residual_f = frobenius_norm(res);
  rep.residual_max = max_abs(res);
  rep.residual_2 = spectral_norm(res);
  rep.schur_f = frobenius_norm(s);
  rep.schur_max = max_abs(s);
  rep.schur_2 = spectral_norm(s);

  rep.checks.thm1_equality = norm_equal(*rep.residual_f, *rep.schur_f, a_f) &&
                             norm_equal(*rep.residual_max, *rep.schur_max, a_f);

  if (std::min(a.rows(), a.cols()) <= 2000) {
    const SvdResult sv = svd_oracle(a);
    const double sig1 = sv.sigma.size() ? sv.sigma[0] : 0.0;
    const double sig_k1 = fact.k < sv.sigma.size() ? sv.sigma[fact.k] : 0.0;
    rep.gamma = sigma_is_zero(sig_k1, sig1) ? 0.0 : *rep.residual_2 / sig_k1;
    rep.q1 = rep.gamma;
    if (cur) {
      const DenseMatrix crec = cur_reconstruct(fact, *cur);
      const DenseMatrix cres = subtract(permuted_input(a, fact), crec);
      rep.cur_residual_f = frobenius_norm(cres);
      rep.cur_residual_2 = spectral_norm(cres);
      rep.omega = sigma_is_zero(sig_k1, sig1) ? 0.0 : *rep.cur_residual_f / sig_k1;
      rep.checks.thm3_fro = *rep.cur_residual_f <= *rep.schur_f + 1e-10 * a_f;
      rep.checks.thm3_spectral = *rep.cur_residual_2 <= 2.0 * *rep.schur_2 + diag::kBoundSlack;
    }
  } else if (cur) {
    const DenseMatrix crec = cur_reconstruct(fact, *cur);
    const DenseMatrix cres = subtract(permuted_input(a, fact), crec);
    rep.cur_residual_f = frobenius_norm(cres);
    rep.cur_residual_2 = spectral_norm(cres);
    rep.checks.thm3_fro = *rep.cur_residual_f <= *rep.schur_f + 1e-10 * a_f;
    rep.checks.thm3_spectral = *rep.cur_residual_2 <= 2.0 * *rep.schur_2 + diag::kBoundSlack;
  }
  return rep;
}

DiagnosticsReport spectrum_report(const DenseMatrix& a, const TruncatedLU& fact,
                                  const CurFactor* cur) {
  DiagnosticsReport rep;
  rep.m = a.rows();
  rep.n = a.cols();
  rep.k = fact.k;
  const std::size_t k = fact.k;

  const SvdResult sva = svd_oracle(a);
  const DenseMatrix lu = matmul(fact.lhat, fact.uhat);
  const SvdResult svlu = svd_oracle(lu);

  const double sig1 = sva.sigma.size() ? sva.sigma[0] : 0.0;
  const double sig_k1 = k < sva.sigma.size() ? sva.sigma[k] : 0.0;
  const bool tail_zero = sigma_is_zero(sig_k1, sig1);

  const DenseMatrix p = permuted_input(a, fact);
  const DenseMatrix res = subtract(p, lu);
  const double res_2 = spectral_norm(res);
  const DenseMatrix s = explicit_schur(a, fact);
  const double s2 = spectral_norm(s);

  rep.sv_ratios.resize(k);
  double q2 = 0.0, tau = 0.0;
  bool thm2_ok = true, thm5_ok = true;
  for (std::size_t j = 0; j < k; ++j) {
    const double sa = sva.sigma[j];
    const double sl = svlu.sigma[j];
    if (sa <= diag::kSigmaZeroRel * sig1) {
      rep.sv_ratios[j] = sl <= diag::kSigmaZeroRel * sig1 ? 1.0 : 0.0;
      continue;
    }
    rep.sv_ratios[j] = sl / sa;
    if (sl > 0.0) q2 = std::max(q2, sa / sl);
    if (!tail_zero) tau = std::max(tau, std::fabs(rep.sv_ratios[j] - 1.0) * sa / sig_k1);

    // thm2 check: sigma_j(A) <= sigma_j(LU)*(1 + (1 + |S|_2/sigma_k(LU)) * |S|_2/sigma_j(A)).
    const double sig_k_lu = svlu.sigma[k - 1];
    if (sl > 0.0 && sig_k_lu > 0.0) {
      const double rhs = sl * (1.0 + (1.0 + s2 / sig_k_lu) * (s2 / sa));
      if (sa > rhs * (1.0 + diag::kBoundSlack)) thm2_ok = false;
    }
    if (!tail_zero && sig_k1 / sa <= 1e-3 && std::fabs(rep.sv_ratios[j] - 1.0) > 0.01)
      thm5_ok = false;
  }
  rep.q2 = q2;
  rep.tau = tail_zero ? 0.0 : tau;
  rep.q1 = tail_zero ? 0.0 : res_2 / sig_k1;
  rep.gamma = rep.q1;
  rep.checks.thm2 = thm2_ok;
  rep.checks.thm5_fidelity = thm5_ok;

  // Rank-s truncation bound, evaluated over a spread of s when k is large.
  if (k >= 2 && std::min(rep.m, rep.n) <= 256) {
    std::vector<std::size_t> ss;
    if (k <= 17) {
      for (std::size_t sst = 1; sst < k; ++sst) ss.push_back(sst);
    } else {
      for (std::size_t t = 0; t < 8; ++t) ss.push_back(1 + t * (k - 2) / 7);
    }
    bool ok = true;
    for (std::size_t sst : ss) {
      DenseMatrix trunc(lu.rows(), lu.cols());
      for (std::size_t t = 0; t < sst; ++t) {
        const double sv = svlu.sigma[t];
        if (sv == 0.0) break;
        for (std::size_t i = 0; i < lu.rows(); ++i) {
          const double ui = svlu.u(i, t) * sv;
          for (std::size_t jj = 0; jj < lu.cols(); ++jj) trunc(i, jj) += ui * svlu.v(jj, t);
        }
      }
      const double lhs = spectral_norm(subtract(p, trunc));
      const double rhs = 2.0 * s2 + sva.sigma[sst];
      if (lhs > rhs * (1.0 + diag::kBoundSlack) + diag::kNoiseFloor * sig1) {
        ok = false;
        break;
      }
    }
    rep.checks.thm1_rank_s = ok;
  }

  if (cur) {
    const DenseMatrix crec = cur_reconstruct(fact, *cur);
    const SvdResult svc = svd_oracle(crec);
    bool thm7_ok = true;
    for (std::size_t j = 0; j < k; ++j) {
      const double sa = sva.sigma[j];
      if (!(sa * sa > 2.0 * s2 * s2)) continue;
      if (svc.sigma[j] > sa * (1.0 + diag::kBoundSlack)) thm7_ok = false;
    }
    rep.checks.thm7_ordering = thm7_ok;
  }
  return rep;
}

FillCounts fill_report(const TruncatedLU& fact, double threshold, const DenseMatrix* schur,
                       const DenseMatrix* input) {
  if (threshold < 0.0) throw ParameterError("fill threshold must be non-negative");
  FillCounts fc;
  fc.threshold = threshold;
  fc.l = count_over(fact.lhat, threshold);
  fc.u = count_over(fact.uhat, threshold);
  if (schur) fc.schur = count_over(*schur, threshold);
  if (input) fc.input = count_over(*input, threshold);
  return fc;
}

DiagnosticsReport run_diagnostics(const DenseMatrix& a, const TruncatedLU& fact,
                                  const CurFactor* cur, const DiagnosticsOptions& opts) {
  DiagnosticsReport rep;
  rep.m = a.rows();
  rep.n = a.cols();
  rep.k = fact.k;

  DenseMatrix s = explicit_schur(a, fact);
  if (opts.with_norms) {
    DiagnosticsReport r = residual_report(a, fact, cur);
    rep = std::move(r);
  }
  if (opts.with_spectrum) {
    DiagnosticsReport spec = spectrum_report(a, fact, cur);
    rep.sv_ratios = std::move(spec.sv_ratios);
    rep.q1 = spec.q1;
    rep.q2 = spec.q2;
    rep.gamma = spec.gamma;
    rep.tau = spec.tau;
    rep.checks.thm2 = spec.checks.thm2;
    rep.checks.thm5_fidelity = spec.checks.thm5_fidelity;
    rep.checks.thm1_rank_s = spec.checks.thm1_rank_s;
    if (spec.checks.thm7_ordering.has_value())
      rep.checks.thm7_ordering = spec.checks.thm7_ordering;
  }
  rep.fill = fill_report(fact, opts.fill_threshold, &s, &a);
  return rep;
}

}  // namespace srlu
