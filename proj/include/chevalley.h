/* chevalley.h - C interface to the Chevalley-basis construction and
 * recognition library.
 *
 * All objects are opaque handles created and destroyed by this API. Every
 * function that can fail returns a chv_status; on failure the out-parameters
 * are untouched and chv_last_error() describes the problem.
 */
#ifndef CHEVALLEY_H
#define CHEVALLEY_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct chv_algebra chv_algebra;     /* Lie algebra over GF(p) */
typedef struct chv_matrix chv_matrix;       /* d x d matrix over GF(p) */
typedef struct chv_subspace chv_subspace;   /* subspace of GF(p)^d */
typedef struct chv_recovery chv_recovery;   /* recognition output */

typedef enum chv_status {
  CHV_OK = 0,
  CHV_ERR_ARGUMENT = 1,    /* invalid type, rank, prime, or handle misuse */
  CHV_ERR_PARSE = 2,       /* malformed input file */
  CHV_ERR_IO = 3,          /* filesystem failure */
  CHV_ERR_RECOGNITION = 4, /* recognition budget exhausted */
  CHV_ERR_INTERNAL = 5
} chv_status;

const char* chv_status_name(chv_status s);
/* Detail message for the most recent failure on this thread. */
const char* chv_last_error(void);

/* ---- construction ---- */

/* Canonical Chevalley algebra of type <series><rank> over GF(p), tagged with
 * its canonical basis. series is one of 'A'..'G'; p a prime >= 5. */
chv_status chv_algebra_build(char series, unsigned rank, unsigned long p, chv_algebra** out);
chv_status chv_algebra_direct_sum(const chv_algebra* a, const chv_algebra* b, chv_algebra** out);
chv_status chv_algebra_add_center(const chv_algebra* a, unsigned k, chv_algebra** out);
/* Random invertible change of basis; basis_change_out may be NULL. */
chv_status chv_algebra_scramble(const chv_algebra* a, unsigned long long seed, chv_algebra** out,
                                chv_matrix** basis_change_out);
void chv_algebra_free(chv_algebra* a);

unsigned chv_algebra_dim(const chv_algebra* a);
unsigned long chv_algebra_prime(const chv_algebra* a);
int chv_algebra_has_tags(const chv_algebra* a);
/* 1 when the two tensors are identical entry for entry. */
chv_status chv_algebra_equal(const chv_algebra* a, const chv_algebra* b, int* equal_out);

/* ---- files ---- */

chv_status chv_algebra_read(const char* path, chv_algebra** out);
chv_status chv_algebra_write(const chv_algebra* a, const char* path);
/* Sidecar naming the canonical basis; requires a tagged single-type algebra. */
chv_status chv_algebra_write_tags(const chv_algebra* a, const char* path);

chv_status chv_matrix_write(const chv_matrix* m, const char* path);
chv_status chv_matrix_read(const char* path, chv_matrix** out);
void chv_matrix_free(chv_matrix* m);
/* image of the canonical basis vector with the given index under the INVERSE
 * change of basis, i.e. its coordinates in the scrambled basis; vec_out must
 * hold dim entries. */
chv_status chv_matrix_pullback_unit(const chv_matrix* m, unsigned index, unsigned long* vec_out);

chv_status chv_subspace_read(const char* path, chv_subspace** out);
chv_status chv_subspace_write(const chv_subspace* s, const char* path);
/* Span of the given row vectors (values reduced mod p). */
chv_status chv_subspace_create(unsigned long p, unsigned dim, unsigned rows,
                               const unsigned long* data, chv_subspace** out);
unsigned chv_subspace_dim(const chv_subspace* s);
void chv_subspace_free(chv_subspace* s);

/* ---- recognition ---- */

/* The main algorithm. h0 may be NULL; when given it must be split toral and
 * the recovered Cartan contains it. Las Vegas: the result is verified before
 * it is returned. */
chv_status chv_recover(const chv_algebra* a, const chv_subspace* h0, unsigned long long seed,
                       chv_recovery** out);
void chv_recovery_free(chv_recovery* r);

chv_status chv_recovery_write(const chv_recovery* r, const char* path);
chv_status chv_recovery_read(const char* path, chv_recovery** out);

unsigned chv_recovery_component_count(const chv_recovery* r);
chv_status chv_recovery_component_type(const chv_recovery* r, unsigned idx, char* series_out,
                                       unsigned* rank_out);
unsigned chv_recovery_center_dim(const chv_recovery* r);
unsigned chv_recovery_restarts(const chv_recovery* r);
chv_status chv_recovery_cartan(const chv_recovery* r, chv_subspace** out);

/* Exhaustive Chevalley-axiom verification. passed_out receives 0/1; when
 * report_out is non-NULL it receives a malloc'd text report ("check <name>
 * PASS|FAIL" lines) the caller frees with chv_string_free. */
chv_status chv_verify(const chv_algebra* a, const chv_recovery* r, int* passed_out,
                      char** report_out);
void chv_string_free(char* s);

/* ---- Cartan conjugacy ---- */

/* An automorphism g with g(h1) = h2, for perfect algebras. */
chv_status chv_conjugate_cartans(const chv_algebra* a, const chv_subspace* h1,
                                 const chv_subspace* h2, unsigned long long seed,
                                 chv_matrix** g_out);
chv_status chv_check_automorphism(const chv_algebra* a, const chv_matrix* g, int* passed_out);

/* ---- instrumentation ---- */

/* Field multiplications/inversions performed since the last reset. */
unsigned long long chv_field_ops(void);
void chv_field_ops_reset(void);

#ifdef __cplusplus
}
#endif

#endif /* CHEVALLEY_H */
