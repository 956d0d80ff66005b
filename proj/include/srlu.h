/*
 * Copyright 2026 The SRLU Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the SRLU library: truncated LU factorization with randomized
 * complete pivoting, spectrum-revealing pivoting, CUR refinement, online row
 * appends, diagnostics and the block-size cost model.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every function returns a status code; on failure srlu_last_error() gives a
 * human-readable description for the calling thread. Matrices cross the
 * boundary as row-major double buffers.
 */

#ifndef SRLU_H_
#define SRLU_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define SRLU_OK 0
#define SRLU_ERR_PARAMETER 1
#define SRLU_ERR_SHAPE 2
#define SRLU_ERR_SINGULAR 3
#define SRLU_ERR_CONVERGENCE 4
#define SRLU_ERR_CAPACITY 5
#define SRLU_ERR_NUMERIC 6
#define SRLU_ERR_PROVENANCE 7
#define SRLU_ERR_SWAP_CAP 8
#define SRLU_ERR_IO 9
#define SRLU_ERR_UNKNOWN 10

typedef struct srlu_matrix srlu_matrix;
typedef struct srlu_factor srlu_factor;
typedef struct srlu_report srlu_report;

const char* srlu_version(void);

/* Message for the most recent failure on this thread. Never NULL. */
const char* srlu_last_error(void);

/* ---- matrices ---------------------------------------------------------- */

/* data may be NULL for a zero matrix; otherwise rows*cols row-major doubles.
 * Non-finite entries are rejected. */
int srlu_matrix_create(uint64_t rows, uint64_t cols, const double* data, srlu_matrix** out);
int srlu_matrix_dims(const srlu_matrix* m, uint64_t* rows, uint64_t* cols);
/* cap is the buffer length in doubles; must be at least rows*cols. */
int srlu_matrix_copy_data(const srlu_matrix* m, double* out, uint64_t cap);
void srlu_matrix_destroy(srlu_matrix* m);

/* Synthetic inputs. param: decay rate d for DECAY (0<d<1), rank for RANK,
 * bandwidth for BANDED, the Kahan constant c for KAHAN (pass 0 for the
 * classic 0.285). KAHAN requires rows == cols. */
#define SRLU_GEN_DECAY 0
#define SRLU_GEN_RANK 1
#define SRLU_GEN_BANDED 2
#define SRLU_GEN_KAHAN 3
int srlu_gen(int kind, uint64_t rows, uint64_t cols, double param, uint64_t seed,
             srlu_matrix** out);

/* ---- factorization ----------------------------------------------------- */

typedef struct srlu_factor_info {
  uint64_t achieved_rank;
  int early_stop;
  uint64_t flop_count;
} srlu_factor_info;

/* Truncated randomized LU with complete pivoting. block = 0 lets the cost
 * model pick; oversample is the excess c (sketch rows p = b + c). */
int srlu_trlucp(const srlu_matrix* a, uint64_t rank, uint64_t block, uint64_t oversample,
                uint64_t seed, srlu_factor** out, srlu_factor_info* info);

typedef struct srlu_srp_summary {
  uint64_t swaps;
  int passed;
  double final_maxinv;
  double final_threshold;
  uint64_t fallback_refactorizations;
  double residual_fro; /* |pi1 A pi2^T - LU|_F after the run */
} srlu_srp_summary;

#define SRLU_ALPHA_SKETCHED 0
#define SRLU_ALPHA_EXACT 1

/* Spectrum-revealing pivoting, improving the factorization in place.
 * tolerance must exceed 1; max_swaps = 0 selects the default 4*k.
 * SRLU_ERR_SWAP_CAP reports a hit cap; the factor handle is then left in its
 * input state and the summary carries the partial run. */
int srlu_srp(const srlu_matrix* a, srlu_factor* f, double tolerance, uint64_t max_swaps,
             int alpha_mode, srlu_srp_summary* summary);

int srlu_factor_dims(const srlu_factor* f, uint64_t* rows, uint64_t* cols, uint64_t* rank,
                     uint64_t* block);
int srlu_factor_perm_rows(const srlu_factor* f, uint64_t* out, uint64_t cap);
int srlu_factor_perm_cols(const srlu_factor* f, uint64_t* out, uint64_t cap);
/* lhat is rows*rank row-major, uhat rank*cols. */
int srlu_factor_copy_l(const srlu_factor* f, double* out, uint64_t cap);
int srlu_factor_copy_u(const srlu_factor* f, double* out, uint64_t cap);
/* Rebuild a factor handle from serialized parts (validates permutations and
 * trapezoidal shapes). Such a factor has no retained sketch. */
int srlu_factor_from_parts(uint64_t rows, uint64_t cols, uint64_t rank, uint64_t block,
                           const uint64_t* perm_rows, const uint64_t* perm_cols, const double* lhat,
                           const double* uhat, srlu_factor** out);
void srlu_factor_destroy(srlu_factor* f);

int srlu_residual_fro(const srlu_matrix* a, const srlu_factor* f, double* out);

/* ---- CUR refinement ---------------------------------------------------- */

/* The k-by-k core M with pi1 A pi2^T ~ lhat * M * uhat. */
int srlu_cur(const srlu_matrix* a, const srlu_factor* f, srlu_matrix** m_mid);
/* Approximate variant: the high-rank factorization stands in for A. */
int srlu_cur_approx(const srlu_factor* f_hi, const srlu_factor* f, srlu_matrix** m_mid);

/* ---- online updating --------------------------------------------------- */

/* Appends new observation rows and re-runs spectrum-revealing pivoting (exact
 * alpha mode) over the stacked matrix [decay*a_old; new_rows]. decay in
 * (0, 1]. Appending zero rows returns a copy of the input factorization. */
int srlu_append_rows(const srlu_matrix* a_old, const srlu_factor* f, const srlu_matrix* new_rows,
                     double decay, double tolerance, uint64_t max_swaps, srlu_factor** out,
                     srlu_srp_summary* summary);

/* ---- diagnostics ------------------------------------------------------- */

#define SRLU_DIAG_NORMS 0x1    /* residual/Schur norms + Theorem 1/3 checks */
#define SRLU_DIAG_SPECTRUM 0x2 /* singular-value fidelity (needs the SVD oracle) */
#define SRLU_DIAG_CUR 0x4      /* compute the exact CUR core and its checks */

int srlu_diagnose(const srlu_matrix* a, const srlu_factor* f, uint32_t flags,
                  double fill_threshold, srlu_report** out);

/* Scalar fields. Getter returns SRLU_ERR_PARAMETER when the field was not
 * computed under the given flags. */
#define SRLU_DIAG_RESIDUAL_F 0
#define SRLU_DIAG_RESIDUAL_2 1
#define SRLU_DIAG_RESIDUAL_MAX 2
#define SRLU_DIAG_SCHUR_F 3
#define SRLU_DIAG_SCHUR_2 4
#define SRLU_DIAG_SCHUR_MAX 5
#define SRLU_DIAG_CUR_RESIDUAL_F 6
#define SRLU_DIAG_CUR_RESIDUAL_2 7
#define SRLU_DIAG_Q1 8
#define SRLU_DIAG_Q2 9
#define SRLU_DIAG_GAMMA 10
#define SRLU_DIAG_TAU 11
#define SRLU_DIAG_OMEGA 12
int srlu_report_scalar(const srlu_report* r, int field, double* out);

/* len receives the ratio count (k); buffer may be NULL to query the size. */
int srlu_report_sv_ratios(const srlu_report* r, double* out, uint64_t cap, uint64_t* len);

/* Checks return -1 (not evaluated), 0 (failed) or 1 (held). */
#define SRLU_CHECK_THM1_EQUALITY 0
#define SRLU_CHECK_THM1_RANK_S 1
#define SRLU_CHECK_THM2 2
#define SRLU_CHECK_THM3_FRO 3
#define SRLU_CHECK_THM3_SPECTRAL 4
#define SRLU_CHECK_THM5_FIDELITY 5
#define SRLU_CHECK_THM7_ORDERING 6
int srlu_report_check(const srlu_report* r, int check, int* out);

/* Fill counts at the diagnose threshold; schur/input are -1 when absent. */
int srlu_report_fill(const srlu_report* r, int64_t* l, int64_t* u, int64_t* schur, int64_t* input);
void srlu_report_destroy(srlu_report* r);

/* ---- block-size cost model --------------------------------------------- */

int srlu_predict_time(uint64_t m, uint64_t n, uint64_t k, uint64_t b, double cache_words,
                      double t_flop, double t_mem, double* out);
/* b_lo = b_hi = 0 selects the default range [4, min(64, k)]. */
int srlu_choose_block_size(uint64_t m, uint64_t n, uint64_t k, double cache_words, double t_flop,
                           double t_mem, uint64_t b_lo, uint64_t b_hi, uint64_t* out);
int srlu_sketch_block_dims(double p, double cache_words, double* s_star, double* b_star,
                           double* l_star);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SRLU_H_ */
