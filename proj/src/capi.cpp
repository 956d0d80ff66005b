// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0

#include "srlu.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <optional>
#include <string>

#include "srlu/diagnostics.hpp"
#include "srlu/extensions.hpp"
#include "srlu/generators.hpp"
#include "srlu/matrix.hpp"
#include "srlu/srp.hpp"
#include "srlu/trlucp.hpp"
#include "srlu/tuning.hpp"

struct srlu_matrix {
  srlu::DenseMatrix m;
};

struct srlu_factor {
  srlu::TruncatedLU f;
};

struct srlu_report {
  srlu::DiagnosticsReport r;
};

namespace {

thread_local std::string g_last_error;

int set_error(const std::exception& e) {
  g_last_error = e.what();
  if (const auto* err = dynamic_cast<const srlu::Error*>(&e)) {
    return static_cast<int>(err->code());
  }
  return SRLU_ERR_UNKNOWN;
}

int set_error(const char* msg, int code) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return set_error(e);
  } catch (...) {
    return set_error("unknown failure", SRLU_ERR_UNKNOWN);
  }
}

int require(bool cond, const char* msg) {
  return cond ? SRLU_OK : set_error(msg, SRLU_ERR_PARAMETER);
}

void fill_summary(const srlu::SrpReport& rep, const srlu::DenseMatrix& a,
                  const srlu::TruncatedLU& f, srlu_srp_summary* out) {
  if (!out) return;
  out->swaps = rep.swaps;
  out->passed = rep.passed ? 1 : 0;
  out->final_maxinv = rep.final_maxinv;
  out->final_threshold = rep.final_threshold;
  out->fallback_refactorizations = rep.fallback_refactorizations;
  out->residual_fro = srlu::frobenius_norm(srlu::residual_matrix(a, f));
}

}  // namespace

extern "C" {

const char* srlu_version(void) { return "1.0.0"; }

const char* srlu_last_error(void) { return g_last_error.c_str(); }

int srlu_matrix_create(uint64_t rows, uint64_t cols, const double* data, srlu_matrix** out) {
  if (int rc = require(out && rows > 0 && cols > 0, "need positive dims and an output slot"))
    return rc;
  return guarded([&] {
    if (data) {
      std::vector<double> v(data, data + rows * cols);
      *out = new srlu_matrix{srlu::DenseMatrix(rows, cols, std::move(v))};
    } else {
      *out = new srlu_matrix{srlu::DenseMatrix(rows, cols)};
    }
    return SRLU_OK;
  });
}

int srlu_matrix_dims(const srlu_matrix* m, uint64_t* rows, uint64_t* cols) {
  if (int rc = require(m && rows && cols, "null argument")) return rc;
  *rows = m->m.rows();
  *cols = m->m.cols();
  return SRLU_OK;
}

int srlu_matrix_copy_data(const srlu_matrix* m, double* out, uint64_t cap) {
  if (int rc = require(m && out, "null argument")) return rc;
  if (cap < m->m.size()) return set_error("buffer too small", SRLU_ERR_PARAMETER);
  std::memcpy(out, m->m.data().data(), m->m.size() * sizeof(double));
  return SRLU_OK;
}

void srlu_matrix_destroy(srlu_matrix* m) { delete m; }

int srlu_gen(int kind, uint64_t rows, uint64_t cols, double param, uint64_t seed,
             srlu_matrix** out) {
  if (int rc = require(out != nullptr, "null output slot")) return rc;
  return guarded([&]() {
    srlu::DenseMatrix m;
    switch (kind) {
      case SRLU_GEN_DECAY:
        m = srlu::gen_decay(rows, cols, param, seed);
        break;
      case SRLU_GEN_RANK:
        m = srlu::gen_rank(rows, cols, static_cast<std::size_t>(param), seed);
        break;
      case SRLU_GEN_BANDED:
        m = srlu::gen_banded(rows, cols, static_cast<std::size_t>(param), seed);
        break;
      case SRLU_GEN_KAHAN:
        if (rows != cols) throw srlu::ParameterError("kahan matrices are square");
        m = srlu::gen_kahan(rows, param == 0.0 ? 0.285 : param);
        break;
      default:
        throw srlu::ParameterError("unknown generator kind");
    }
    *out = new srlu_matrix{std::move(m)};
    return SRLU_OK;
  });
}

int srlu_trlucp(const srlu_matrix* a, uint64_t rank, uint64_t block, uint64_t oversample,
                uint64_t seed, srlu_factor** out, srlu_factor_info* info) {
  if (int rc = require(a && out, "null argument")) return rc;
  return guarded([&]() {
    srlu::TrlucpOptions opts;
    opts.k = rank;
    opts.b = block;
    opts.c = oversample;
    opts.seed = seed;
    srlu::FactorOutcome res = srlu::trlucp(a->m, opts);
    if (info) {
      info->achieved_rank = res.achieved_rank;
      info->early_stop = res.early_stop ? 1 : 0;
      info->flop_count = res.flop_count;
    }
    *out = new srlu_factor{std::move(res.factorization)};
    return SRLU_OK;
  });
}

int srlu_srp(const srlu_matrix* a, srlu_factor* f, double tolerance, uint64_t max_swaps,
             int alpha_mode, srlu_srp_summary* summary) {
  if (int rc = require(a && f, "null argument")) return rc;
  return guarded([&]() {
    srlu::SrpConfig cfg;
    cfg.f = tolerance;
    cfg.max_swaps = max_swaps;
    cfg.alpha_mode =
        alpha_mode == SRLU_ALPHA_EXACT ? srlu::AlphaMode::exact : srlu::AlphaMode::sketched;
    try {
      auto [updated, rep] = srlu::srp(a->m, f->f, cfg);
      f->f = std::move(updated);
      fill_summary(rep, a->m, f->f, summary);
      return SRLU_OK;
    } catch (const srlu::SwapCapError& cap) {
      fill_summary(cap.report(), a->m, f->f, summary);
      throw;
    }
  });
}

int srlu_factor_dims(const srlu_factor* f, uint64_t* rows, uint64_t* cols, uint64_t* rank,
                     uint64_t* block) {
  if (int rc = require(f != nullptr, "null factor")) return rc;
  if (rows) *rows = f->f.rows();
  if (cols) *cols = f->f.cols();
  if (rank) *rank = f->f.k;
  if (block) *block = f->f.b;
  return SRLU_OK;
}

namespace {

int copy_perm(const srlu::PermutationVector& p, uint64_t* out, uint64_t cap) {
  if (!out) return set_error("null buffer", SRLU_ERR_PARAMETER);
  if (cap < p.size()) return set_error("buffer too small", SRLU_ERR_PARAMETER);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  return SRLU_OK;
}

int copy_mat(const srlu::DenseMatrix& m, double* out, uint64_t cap) {
  if (!out) return set_error("null buffer", SRLU_ERR_PARAMETER);
  if (cap < m.size()) return set_error("buffer too small", SRLU_ERR_PARAMETER);
  std::memcpy(out, m.data().data(), m.size() * sizeof(double));
  return SRLU_OK;
}

}  // namespace

int srlu_factor_perm_rows(const srlu_factor* f, uint64_t* out, uint64_t cap) {
  if (int rc = require(f != nullptr, "null factor")) return rc;
  return copy_perm(f->f.pi1, out, cap);
}

int srlu_factor_perm_cols(const srlu_factor* f, uint64_t* out, uint64_t cap) {
  if (int rc = require(f != nullptr, "null factor")) return rc;
  return copy_perm(f->f.pi2, out, cap);
}

int srlu_factor_copy_l(const srlu_factor* f, double* out, uint64_t cap) {
  if (int rc = require(f != nullptr, "null factor")) return rc;
  return copy_mat(f->f.lhat, out, cap);
}

int srlu_factor_copy_u(const srlu_factor* f, double* out, uint64_t cap) {
  if (int rc = require(f != nullptr, "null factor")) return rc;
  return copy_mat(f->f.uhat, out, cap);
}

int srlu_factor_from_parts(uint64_t rows, uint64_t cols, uint64_t rank, uint64_t block,
                           const uint64_t* perm_rows, const uint64_t* perm_cols, const double* lhat,
                           const double* uhat, srlu_factor** out) {
  if (int rc = require(out && perm_rows && perm_cols && lhat && uhat, "null argument")) return rc;
  return guarded([&]() {
    if (rank > std::min(rows, cols))
      throw srlu::ParameterError("rank exceeds the matrix dimensions");
    srlu::TruncatedLU f;
    f.k = rank;
    f.b = block;
    f.pi1 = srlu::PermutationVector(std::vector<std::size_t>(perm_rows, perm_rows + rows));
    f.pi2 = srlu::PermutationVector(std::vector<std::size_t>(perm_cols, perm_cols + cols));
    f.lhat = srlu::DenseMatrix(rows, rank, std::vector<double>(lhat, lhat + rows * rank));
    f.uhat = srlu::DenseMatrix(rank, cols, std::vector<double>(uhat, uhat + rank * cols));
    for (std::size_t t = 0; t < rank; ++t) {
      if (f.lhat(t, t) != 1.0) throw srlu::ParameterError("lhat diagonal must be unit");
      for (std::size_t j = t + 1; j < rank; ++j) {
        if (f.lhat(t, j) != 0.0) throw srlu::ParameterError("lhat must be lower trapezoidal");
      }
      for (std::size_t i = t + 1; i < rank; ++i) {
        if (f.uhat(i, t) != 0.0) throw srlu::ParameterError("uhat must be upper trapezoidal");
      }
    }
    *out = new srlu_factor{std::move(f)};
    return SRLU_OK;
  });
}

void srlu_factor_destroy(srlu_factor* f) { delete f; }

int srlu_residual_fro(const srlu_matrix* a, const srlu_factor* f, double* out) {
  if (int rc = require(a && f && out, "null argument")) return rc;
  return guarded([&]() {
    *out = srlu::frobenius_norm(srlu::residual_matrix(a->m, f->f));
    return SRLU_OK;
  });
}

int srlu_cur(const srlu_matrix* a, const srlu_factor* f, srlu_matrix** m_mid) {
  if (int rc = require(a && f && m_mid, "null argument")) return rc;
  return guarded([&]() {
    srlu::CurFactor cur = srlu::cur_exact(a->m, f->f);
    *m_mid = new srlu_matrix{std::move(cur.m_mid)};
    return SRLU_OK;
  });
}

int srlu_cur_approx(const srlu_factor* f_hi, const srlu_factor* f, srlu_matrix** m_mid) {
  if (int rc = require(f_hi && f && m_mid, "null argument")) return rc;
  return guarded([&]() {
    srlu::CurFactor cur = srlu::cur_approx(f_hi->f, f->f);
    *m_mid = new srlu_matrix{std::move(cur.m_mid)};
    return SRLU_OK;
  });
}

int srlu_append_rows(const srlu_matrix* a_old, const srlu_factor* f, const srlu_matrix* new_rows,
                     double decay, double tolerance, uint64_t max_swaps, srlu_factor** out,
                     srlu_srp_summary* summary) {
  if (int rc = require(a_old && f && new_rows && out, "null argument")) return rc;
  return guarded([&]() {
    srlu::SrpConfig cfg;
    cfg.f = tolerance;
    cfg.max_swaps = max_swaps;
    cfg.alpha_mode = srlu::AlphaMode::exact;
    auto [updated, rep] = srlu::append_rows(a_old->m, f->f, new_rows->m, decay, cfg);
    if (summary) {
      const srlu::DenseMatrix stacked = srlu::stacked_input(a_old->m, new_rows->m, decay);
      fill_summary(rep, stacked, updated, summary);
    }
    *out = new srlu_factor{std::move(updated)};
    return SRLU_OK;
  });
}

int srlu_diagnose(const srlu_matrix* a, const srlu_factor* f, uint32_t flags,
                  double fill_threshold, srlu_report** out) {
  if (int rc = require(a && f && out, "null argument")) return rc;
  return guarded([&]() {
    srlu::DiagnosticsOptions opts;
    opts.with_norms = (flags & SRLU_DIAG_NORMS) != 0;
    opts.with_spectrum = (flags & SRLU_DIAG_SPECTRUM) != 0;
    opts.fill_threshold = fill_threshold >= 0.0 ? fill_threshold : srlu::diag::kFillThreshold;
    std::optional<srlu::CurFactor> cur;
    if (flags & SRLU_DIAG_CUR) cur = srlu::cur_exact(a->m, f->f);
    srlu::DiagnosticsReport rep =
        srlu::run_diagnostics(a->m, f->f, cur ? &*cur : nullptr, opts);
    *out = new srlu_report{std::move(rep)};
    return SRLU_OK;
  });
}

int srlu_report_scalar(const srlu_report* r, int field, double* out) {
  if (int rc = require(r && out, "null argument")) return rc;
  const srlu::DiagnosticsReport& rep = r->r;
  std::optional<double> v;
  switch (field) {
    case SRLU_DIAG_RESIDUAL_F: v = rep.residual_f; break;
    case SRLU_DIAG_RESIDUAL_2: v = rep.residual_2; break;
    case SRLU_DIAG_RESIDUAL_MAX: v = rep.residual_max; break;
    case SRLU_DIAG_SCHUR_F: v = rep.schur_f; break;
    case SRLU_DIAG_SCHUR_2: v = rep.schur_2; break;
    case SRLU_DIAG_SCHUR_MAX: v = rep.schur_max; break;
    case SRLU_DIAG_CUR_RESIDUAL_F: v = rep.cur_residual_f; break;
    case SRLU_DIAG_CUR_RESIDUAL_2: v = rep.cur_residual_2; break;
    case SRLU_DIAG_Q1: v = rep.q1; break;
    case SRLU_DIAG_Q2: v = rep.q2; break;
    case SRLU_DIAG_GAMMA: v = rep.gamma; break;
    case SRLU_DIAG_TAU: v = rep.tau; break;
    case SRLU_DIAG_OMEGA: v = rep.omega; break;
    default:
      return set_error("unknown report field", SRLU_ERR_PARAMETER);
  }
  if (!v.has_value()) return set_error("field not computed under the given flags", SRLU_ERR_PARAMETER);
  *out = *v;
  return SRLU_OK;
}

int srlu_report_sv_ratios(const srlu_report* r, double* out, uint64_t cap, uint64_t* len) {
  if (int rc = require(r != nullptr, "null report")) return rc;
  if (len) *len = r->r.sv_ratios.size();
  if (!out) return SRLU_OK;
  if (cap < r->r.sv_ratios.size()) return set_error("buffer too small", SRLU_ERR_PARAMETER);
  std::copy(r->r.sv_ratios.begin(), r->r.sv_ratios.end(), out);
  return SRLU_OK;
}

int srlu_report_check(const srlu_report* r, int check, int* out) {
  if (int rc = require(r && out, "null argument")) return rc;
  const srlu::DiagnosticsChecks& c = r->r.checks;
  std::optional<bool> v;
  switch (check) {
    case SRLU_CHECK_THM1_EQUALITY: v = c.thm1_equality; break;
    case SRLU_CHECK_THM1_RANK_S: v = c.thm1_rank_s; break;
    case SRLU_CHECK_THM2: v = c.thm2; break;
    case SRLU_CHECK_THM3_FRO: v = c.thm3_fro; break;
    case SRLU_CHECK_THM3_SPECTRAL: v = c.thm3_spectral; break;
    case SRLU_CHECK_THM5_FIDELITY: v = c.thm5_fidelity; break;
    case SRLU_CHECK_THM7_ORDERING: v = c.thm7_ordering; break;
    default:
      return set_error("unknown check id", SRLU_ERR_PARAMETER);
  }
  *out = v.has_value() ? (*v ? 1 : 0) : -1;
  return SRLU_OK;
}

int srlu_report_fill(const srlu_report* r, int64_t* l, int64_t* u, int64_t* schur,
                     int64_t* input) {
  if (int rc = require(r != nullptr, "null report")) return rc;
  const srlu::FillCounts& fc = r->r.fill;
  if (l) *l = static_cast<int64_t>(fc.l);
  if (u) *u = static_cast<int64_t>(fc.u);
  if (schur) *schur = fc.schur ? static_cast<int64_t>(*fc.schur) : -1;
  if (input) *input = fc.input ? static_cast<int64_t>(*fc.input) : -1;
  return SRLU_OK;
}

void srlu_report_destroy(srlu_report* r) { delete r; }

int srlu_predict_time(uint64_t m, uint64_t n, uint64_t k, uint64_t b, double cache_words,
                      double t_flop, double t_mem, double* out) {
  if (int rc = require(out != nullptr, "null output")) return rc;
  return guarded([&]() {
    srlu::BlockSizeModel model{cache_words, t_flop, t_mem, 8};
    *out = srlu::predict_time(m, n, k, b, model);
    return SRLU_OK;
  });
}

int srlu_choose_block_size(uint64_t m, uint64_t n, uint64_t k, double cache_words, double t_flop,
                           double t_mem, uint64_t b_lo, uint64_t b_hi, uint64_t* out) {
  if (int rc = require(out != nullptr, "null output")) return rc;
  return guarded([&]() {
    srlu::BlockSizeModel model{cache_words, t_flop, t_mem, 8};
    *out = srlu::choose_block_size(m, n, k, model, b_lo, b_hi);
    return SRLU_OK;
  });
}

int srlu_sketch_block_dims(double p, double cache_words, double* s_star, double* b_star,
                           double* l_star) {
  if (int rc = require(s_star && b_star && l_star, "null output")) return rc;
  return guarded([&]() {
    srlu::SketchBlockDims d = srlu::sketch_block_dims(p, cache_words);
    *s_star = d.s;
    *b_star = d.b;
    *l_star = d.l;
    return SRLU_OK;
  });
}

}  // extern "C"
