// Copyright 2026 The SRLU Authors
// SPDX-License-Identifier: Apache-2.0
//
// srlu: command-line frontend over the libsrlu C API. JSON results go to
// standard output, progress notes to standard error. Exit codes: 0 success,
// 1 bad parameters, 2 I/O or file-consistency problems, 3 numeric failures.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "file_formats.hpp"
#include "json.hpp"
#include "srlu.h"

using ordered_json = nlohmann::ordered_json;

namespace {

struct CApiError {
  int code;
  std::string message;
};

void check(int rc) {
  if (rc != SRLU_OK) throw CApiError{rc, srlu_last_error()};
}

int exit_code_for(int status) {
  switch (status) {
    case SRLU_ERR_PARAMETER:
    case SRLU_ERR_CAPACITY:
      return 1;
    case SRLU_ERR_SHAPE:
    case SRLU_ERR_IO:
    case SRLU_ERR_PROVENANCE:
      return 2;
    default:
      return 3;
  }
}

struct Matrix {
  srlu_matrix* p = nullptr;
  ~Matrix() { srlu_matrix_destroy(p); }
  Matrix() = default;
  Matrix(const Matrix&) = delete;
  Matrix& operator=(const Matrix&) = delete;
};

struct Factor {
  srlu_factor* p = nullptr;
  ~Factor() { srlu_factor_destroy(p); }
  Factor() = default;
  Factor(const Factor&) = delete;
  Factor& operator=(const Factor&) = delete;
};

struct Report {
  srlu_report* p = nullptr;
  ~Report() { srlu_report_destroy(p); }
};

void load_matrix(const std::string& path, Matrix& out) {
  const srlucli::LoadedMatrix lm = srlucli::load_matrix_file(path);
  check(srlu_matrix_create(lm.rows, lm.cols, lm.data.data(), &out.p));
  std::cerr << "loaded " << path << ": " << lm.rows << "x" << lm.cols << "\n";
}

void load_factor(const std::string& path, Factor& out) {
  const srlucli::FactorFileData d = srlucli::load_factor_file(path);
  check(srlu_factor_from_parts(d.m, d.n, d.k, d.b, d.pi1.data(), d.pi2.data(), d.lhat.data(),
                               d.uhat.data(), &out.p));
  std::cerr << "loaded " << path << ": rank " << d.k << " factors of a " << d.m << "x" << d.n
            << " matrix\n";
}

void save_factor(const std::string& path, const Factor& f) {
  srlucli::FactorFileData d;
  check(srlu_factor_dims(f.p, &d.m, &d.n, &d.k, &d.b));
  d.pi1.resize(d.m);
  d.pi2.resize(d.n);
  d.lhat.resize(d.m * d.k);
  d.uhat.resize(d.k * d.n);
  check(srlu_factor_perm_rows(f.p, d.pi1.data(), d.pi1.size()));
  check(srlu_factor_perm_cols(f.p, d.pi2.data(), d.pi2.size()));
  check(srlu_factor_copy_l(f.p, d.lhat.data(), d.lhat.size()));
  check(srlu_factor_copy_u(f.p, d.uhat.data(), d.uhat.size()));
  srlucli::save_factor_file(path, d);
  std::cerr << "wrote " << path << "\n";
}

ordered_json scalar_or_null(const Report& rep, int field) {
  double v = 0.0;
  if (srlu_report_scalar(rep.p, field, &v) == SRLU_OK) return v;
  return nullptr;
}

ordered_json check_or_null(const Report& rep, int id) {
  int v = -1;
  check(srlu_report_check(rep.p, id, &v));
  if (v < 0) return nullptr;
  return v == 1;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << std::endl; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- subcommands ----------------------------------------------------------

struct FactorArgs {
  std::string input, out;
  std::uint64_t rank = 0, block = 0, oversample = 8, seed = 0;
  double srp_f = 5.0;
  bool no_srp = false;
};

int run_factor(const FactorArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  Matrix mat;
  load_matrix(a.input, mat);

  Factor fac;
  srlu_factor_info info{};
  check(srlu_trlucp(mat.p, a.rank, a.block, a.oversample, a.seed, &fac.p, &info));
  std::cerr << "trlucp: rank " << info.achieved_rank << (info.early_stop ? " (early stop)" : "")
            << ", " << info.flop_count << " flops\n";

  srlu_srp_summary srp{};
  bool ran_srp = false;
  if (!a.no_srp) {
    check(srlu_srp(mat.p, fac.p, a.srp_f, 0, SRLU_ALPHA_SKETCHED, &srp));
    ran_srp = true;
    std::cerr << "srp: " << srp.swaps << " swap(s)\n";
  }

  Report rep;
  check(srlu_diagnose(mat.p, fac.p, SRLU_DIAG_NORMS, -1.0, &rep.p));

  if (!a.out.empty()) save_factor(a.out, fac);

  std::uint64_t m = 0, n = 0, k = 0, b = 0;
  check(srlu_factor_dims(fac.p, &m, &n, &k, &b));
  ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["requested_rank"] = a.rank;
  j["achieved_rank"] = info.achieved_rank;
  j["block"] = b;
  j["seed"] = a.seed;
  j["early_stop"] = info.early_stop != 0;
  j["flop_count"] = info.flop_count;
  j["srp"] = ran_srp;
  j["swaps"] = ran_srp ? ordered_json(srp.swaps) : ordered_json(nullptr);
  j["residual_f"] = scalar_or_null(rep, SRLU_DIAG_RESIDUAL_F);
  j["gamma"] = scalar_or_null(rep, SRLU_DIAG_GAMMA);
  j["out"] = a.out.empty() ? ordered_json(nullptr) : ordered_json(a.out);
  j["elapsed"] = seconds_since(t0);
  emit(j);
  return 0;
}

struct GenArgs {
  std::string kind, out;
  std::uint64_t m = 0, n = 0, seed = 0;
  double param = 0.0;
};

int run_gen(const GenArgs& a) {
  int kind;
  if (a.kind == "decay") kind = SRLU_GEN_DECAY;
  else if (a.kind == "rank") kind = SRLU_GEN_RANK;
  else if (a.kind == "banded") kind = SRLU_GEN_BANDED;
  else if (a.kind == "kahan") kind = SRLU_GEN_KAHAN;
  else throw CApiError{SRLU_ERR_PARAMETER, "unknown kind '" + a.kind + "'"};

  Matrix mat;
  check(srlu_gen(kind, a.m, a.n, a.param, a.seed, &mat.p));
  std::vector<double> data(a.m * a.n);
  check(srlu_matrix_copy_data(mat.p, data.data(), data.size()));
  if (a.out.size() > 4 && a.out.substr(a.out.size() - 4) == ".csv") {
    srlucli::save_csv(a.out, a.m, a.n, data);
  } else {
    srlucli::save_matrix_market_array(a.out, a.m, a.n, data);
  }
  std::cerr << "wrote " << a.out << "\n";

  ordered_json j;
  j["kind"] = a.kind;
  j["m"] = a.m;
  j["n"] = a.n;
  j["param"] = a.param;
  j["seed"] = a.seed;
  j["out"] = a.out;
  emit(j);
  return 0;
}

struct DiagnoseArgs {
  std::string input, factor, json_out;
  bool with_cur = false;
  bool no_spectrum = false;
  double threshold = 1e-14;
};

int run_diagnose(const DiagnoseArgs& a) {
  Matrix mat;
  load_matrix(a.input, mat);
  Factor fac;
  load_factor(a.factor, fac);

  uint32_t flags = SRLU_DIAG_NORMS;
  if (!a.no_spectrum) flags |= SRLU_DIAG_SPECTRUM;
  if (a.with_cur) flags |= SRLU_DIAG_CUR;
  Report rep;
  check(srlu_diagnose(mat.p, fac.p, flags, a.threshold, &rep.p));

  std::uint64_t m = 0, n = 0, k = 0, b = 0;
  check(srlu_factor_dims(fac.p, &m, &n, &k, &b));

  ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["k"] = k;
  j["residual_f"] = scalar_or_null(rep, SRLU_DIAG_RESIDUAL_F);
  j["residual_2"] = scalar_or_null(rep, SRLU_DIAG_RESIDUAL_2);
  j["schur_f"] = scalar_or_null(rep, SRLU_DIAG_SCHUR_F);
  j["schur_2"] = scalar_or_null(rep, SRLU_DIAG_SCHUR_2);
  j["cur_residual_f"] = scalar_or_null(rep, SRLU_DIAG_CUR_RESIDUAL_F);
  j["cur_residual_2"] = scalar_or_null(rep, SRLU_DIAG_CUR_RESIDUAL_2);
  {
    std::uint64_t len = 0;
    check(srlu_report_sv_ratios(rep.p, nullptr, 0, &len));
    std::vector<double> ratios(len);
    if (len) check(srlu_report_sv_ratios(rep.p, ratios.data(), len, &len));
    j["sv_ratios"] = ratios;
  }
  j["q1"] = scalar_or_null(rep, SRLU_DIAG_Q1);
  j["q2"] = scalar_or_null(rep, SRLU_DIAG_Q2);
  j["gamma"] = scalar_or_null(rep, SRLU_DIAG_GAMMA);
  j["tau"] = scalar_or_null(rep, SRLU_DIAG_TAU);
  j["omega"] = scalar_or_null(rep, SRLU_DIAG_OMEGA);
  {
    int64_t l = 0, u = 0, s = -1, in = -1;
    check(srlu_report_fill(rep.p, &l, &u, &s, &in));
    ordered_json fill;
    fill["l"] = l;
    fill["u"] = u;
    fill["s"] = s < 0 ? ordered_json(nullptr) : ordered_json(s);
    fill["input"] = in < 0 ? ordered_json(nullptr) : ordered_json(in);
    fill["threshold"] = a.threshold;
    j["fill"] = fill;
  }
  {
    ordered_json checks;
    checks["thm1_equality"] = check_or_null(rep, SRLU_CHECK_THM1_EQUALITY);
    checks["thm1_rank_s"] = check_or_null(rep, SRLU_CHECK_THM1_RANK_S);
    checks["thm2"] = check_or_null(rep, SRLU_CHECK_THM2);
    checks["thm3_fro"] = check_or_null(rep, SRLU_CHECK_THM3_FRO);
    checks["thm3_spectral"] = check_or_null(rep, SRLU_CHECK_THM3_SPECTRAL);
    checks["thm5_fidelity"] = check_or_null(rep, SRLU_CHECK_THM5_FIDELITY);
    checks["thm7_ordering"] = check_or_null(rep, SRLU_CHECK_THM7_ORDERING);
    j["checks"] = checks;
  }
  if (!a.json_out.empty()) {
    std::ofstream out(a.json_out);
    if (!out) throw srlucli::FileIoError("cannot write " + a.json_out);
    out << j.dump(2) << "\n";
  }
  emit(j);
  return 0;
}

struct UpdateArgs {
  std::string factor, input_old, new_rows, out;
  double decay = 1.0;
  double srp_f = 5.0;
};

int run_update(const UpdateArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  Factor fac;
  load_factor(a.factor, fac);
  Matrix old_mat, rows;
  load_matrix(a.input_old, old_mat);
  load_matrix(a.new_rows, rows);

  Factor updated;
  srlu_srp_summary sum{};
  check(srlu_append_rows(old_mat.p, fac.p, rows.p, a.decay, a.srp_f, 0, &updated.p, &sum));
  if (!a.out.empty()) save_factor(a.out, updated);

  std::uint64_t m = 0, n = 0, k = 0, b = 0;
  check(srlu_factor_dims(updated.p, &m, &n, &k, &b));
  std::uint64_t rm = 0, rn = 0;
  check(srlu_matrix_dims(rows.p, &rm, &rn));

  ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["k"] = k;
  j["appended_rows"] = rm;
  j["decay"] = a.decay;
  j["swaps"] = sum.swaps;
  j["passed"] = sum.passed != 0;
  j["residual_f"] = sum.residual_fro;
  j["out"] = a.out.empty() ? ordered_json(nullptr) : ordered_json(a.out);
  j["elapsed"] = seconds_since(t0);
  emit(j);
  return 0;
}

struct SparsityArgs {
  std::string factor, pbm;
  double threshold = 1e-14;
};

int run_sparsity(const SparsityArgs& a) {
  const srlucli::FactorFileData d = srlucli::load_factor_file(a.factor);
  std::uint64_t l_fill = 0, u_fill = 0;
  for (double v : d.lhat)
    if (std::abs(v) > a.threshold) ++l_fill;
  for (double v : d.uhat)
    if (std::abs(v) > a.threshold) ++u_fill;

  ordered_json j;
  j["m"] = d.m;
  j["n"] = d.n;
  j["k"] = d.k;
  j["threshold"] = a.threshold;
  j["fill"] = {{"l", l_fill}, {"u", u_fill}};
  if (!a.pbm.empty()) {
    const std::string lp = a.pbm + ".l.pbm";
    const std::string up = a.pbm + ".u.pbm";
    srlucli::write_pbm(lp, d.m, d.k, [&](std::uint64_t i, std::uint64_t jj) {
      return std::abs(d.lhat[i * d.k + jj]) > a.threshold;
    });
    srlucli::write_pbm(up, d.k, d.n, [&](std::uint64_t i, std::uint64_t jj) {
      return std::abs(d.uhat[i * d.n + jj]) > a.threshold;
    });
    j["pbm"] = {{"l", lp}, {"u", up}};
  }
  emit(j);
  return 0;
}

struct BlocksizeArgs {
  std::uint64_t m = 0, n = 0, k = 0;
  double cache = 262144.0, tf = 1.0, tm = 30.0;
  std::uint64_t oversample = 8;
};

int run_blocksize(const BlocksizeArgs& a) {
  std::uint64_t b = 0;
  check(srlu_choose_block_size(a.m, a.n, a.k, a.cache, a.tf, a.tm, 0, 0, &b));
  double t = 0.0;
  check(srlu_predict_time(a.m, a.n, a.k, b, a.cache, a.tf, a.tm, &t));
  double s_star = 0.0, b_star = 0.0, l_star = 0.0;
  check(srlu_sketch_block_dims(static_cast<double>(b + a.oversample), a.cache, &s_star, &b_star,
                               &l_star));
  ordered_json j;
  j["b"] = b;
  j["predicted_time"] = t;
  j["s_star"] = s_star;
  j["b_star"] = b_star;
  j["l_star"] = l_star;
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectrum-revealing truncated LU toolkit"};
  app.set_version_flag("--version", srlu_version());
  app.require_subcommand(1);

  FactorArgs fa;
  CLI::App* factor = app.add_subcommand("factor", "factor a matrix file (TRLUCP + SRP)");
  factor->add_option("input", fa.input, "matrix file (MatrixMarket or CSV)")->required();
  factor->add_option("--rank,-k", fa.rank, "target rank")->required();
  factor->add_option("--block,-b", fa.block, "block size (0 = cost-model default)");
  factor->add_option("--oversample,-c", fa.oversample, "sketch oversampling excess");
  factor->add_option("--seed", fa.seed, "projection seed");
  factor->add_option("--srp", fa.srp_f, "SRP tolerance f (> 1)");
  factor->add_flag("--no-srp", fa.no_srp, "skip spectrum-revealing pivoting");
  factor->add_option("--out,-o", fa.out, "write the factorization here");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic matrix file");
  gen->add_option("--kind", ga.kind, "decay | rank | banded | kahan")->required();
  gen->add_option("--m", ga.m, "rows")->required();
  gen->add_option("--n", ga.n, "cols")->required();
  gen->add_option("--param", ga.param,
                  "decay rate / rank / bandwidth / kahan constant (0 = 0.285)");
  gen->add_option("--seed", ga.seed, "generator seed");
  gen->add_option("--out,-o", ga.out, "output file (.csv or MatrixMarket)")->required();

  DiagnoseArgs da;
  CLI::App* diag = app.add_subcommand("diagnose", "verify the error/spectral bounds");
  diag->add_option("input", da.input, "matrix file")->required();
  diag->add_option("factorization", da.factor, "factorization file")->required();
  diag->add_flag("--cur", da.with_cur, "also compute the CUR core and its checks");
  diag->add_flag("--no-spectrum", da.no_spectrum, "skip singular-value fidelity (no SVD oracle)");
  diag->add_option("--threshold", da.threshold, "fill-count threshold");
  diag->add_option("--json", da.json_out, "also write the report to this file");

  UpdateArgs ua;
  CLI::App* upd = app.add_subcommand("update", "append new observation rows");
  upd->add_option("factorization", ua.factor, "factorization file")->required();
  upd->add_option("input_old", ua.input_old, "already-factored matrix file")->required();
  upd->add_option("new_rows", ua.new_rows, "matrix file with the rows to append")->required();
  upd->add_option("--decay", ua.decay, "down-weight for the old data, in (0, 1]");
  upd->add_option("--srp", ua.srp_f, "SRP tolerance f (> 1)");
  upd->add_option("--out,-o", ua.out, "write the updated factorization here");

  SparsityArgs sa;
  CLI::App* spars = app.add_subcommand("sparsity", "fill counts and factor sparsity patterns");
  spars->add_option("factorization", sa.factor, "factorization file")->required();
  spars->add_option("--threshold", sa.threshold, "magnitude threshold for a nonzero");
  spars->add_option("--pbm", sa.pbm, "write <prefix>.l.pbm / <prefix>.u.pbm patterns");

  BlocksizeArgs ba;
  CLI::App* bs = app.add_subcommand("blocksize", "block-size advisor from the cost model");
  bs->add_option("--m", ba.m, "rows")->required();
  bs->add_option("--n", ba.n, "cols")->required();
  bs->add_option("--k", ba.k, "target rank")->required();
  bs->add_option("--cache", ba.cache, "cache size in 64-bit words");
  bs->add_option("--tf", ba.tf, "cost per flop");
  bs->add_option("--tm", ba.tm, "cost per memory movement");
  bs->add_option("--oversample,-c", ba.oversample, "sketch oversampling excess");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*factor) return run_factor(fa);
    if (*gen) return run_gen(ga);
    if (*diag) return run_diagnose(da);
    if (*upd) return run_update(ua);
    if (*spars) return run_sparsity(sa);
    if (*bs) return run_blocksize(ba);
  } catch (const srlucli::FileIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const srlucli::FileParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CApiError& e) {
    std::cerr << "error: " << e.message << "\n";
    return exit_code_for(e.code);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
