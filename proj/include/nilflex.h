/* C interface to the nilflex library.
 *
 * Every function returns an nf_status. On failure a message is available
 * from nf_last_error() on the calling thread until its next nf_* call.
 * Strings handed out through `char**` belong to the caller and are released
 * with nf_string_free().
 */
#ifndef NILFLEX_H
#define NILFLEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NF_API __declspec(dllexport)
#else
#define NF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nf_status {
  NF_OK = 0,
  NF_ERR_PARSE = 1,
  NF_ERR_JACOBI = 2,
  NF_ERR_NOT_NILPOTENT = 3,
  NF_ERR_DIMENSION = 4,
  NF_ERR_NOT_COCYCLE = 5,
  NF_ERR_NO_SYMPLECTIC = 6,
  NF_ERR_DEGENERATE = 7,
  NF_ERR_INVALID_ARGUMENT = 8,
  NF_ERR_CONVENTION = 9,
  NF_ERR_MISMATCH = 10,
  NF_ERR_INTERNAL = 99
} nf_status;

typedef enum nf_format { NF_FORMAT_MARKDOWN = 0, NF_FORMAT_CSV = 1, NF_FORMAT_JSON = 2, NF_FORMAT_TEXT = 3 } nf_format;

/* A parsed and validated nilpotent Lie algebra with its cohomology and
 * symplectic family. Immutable; may be shared between threads. */
typedef struct nf_algebra nf_algebra;

NF_API const char* nf_version(void);
NF_API const char* nf_last_error(void);
NF_API const char* nf_status_name(nf_status status);
NF_API void nf_string_free(char* s);

/* NILFLEX_SEED if set, else the built-in default. */
NF_API nf_status nf_default_seed(uint64_t* out);
/* "md", "markdown", "csv", "json", "text". */
NF_API nf_status nf_parse_format(const char* name, nf_format* out);

NF_API nf_status nf_algebra_parse(const char* structure, nf_algebra** out);
NF_API void nf_algebra_free(nf_algebra* a);

NF_API nf_status nf_algebra_dim(const nf_algebra* a, int* out);
NF_API nf_status nf_algebra_step_length(const nf_algebra* a, int* out);
NF_API nf_status nf_algebra_normalized(const nf_algebra* a, char** out);
/* Writes b_0..b_n into out[0..cap); *count receives n+1 even when cap is smaller. */
NF_API nf_status nf_algebra_betti(const nf_algebra* a, size_t* out, size_t cap, size_t* count);
/* Parameter names of the symplectic family, comma separated ("A,B,C,D"). */
NF_API nf_status nf_algebra_parameters(const nf_algebra* a, char** out);
/* Pf as a polynomial in the parameters; NF_ERR_DIMENSION for odd dimension. */
NF_API nf_status nf_algebra_pfaffian(const nf_algebra* a, char** out);
/* h_j at a parameter assignment such as "A=1,B=-2/3" (j <= 2 or j >= 2m-2). */
NF_API nf_status nf_algebra_harmonic_betti(const nf_algebra* a, const char* assignment, int j, size_t* out);

/* Full pipeline report. `points` random points per algebra (0 = default). */
NF_API nf_status nf_analyze(const char* structure, uint64_t seed, size_t points, nf_format format, char** out);

/* Harmonic profile and identity suite at ω. Exactly one of `assignment`
 * (family parameters) and `form` (a closed 2-form such as "16+25-34") must be
 * non-null. */
NF_API nf_status nf_harmonic(const char* structure, const char* assignment, const char* form, nf_format format,
                             char** out);

/* Harmonic numbers of g1 ⊕ g2 with ω1 ⊕ ω2, directly and by the product formulas. */
NF_API nf_status nf_product(const char* structure1, const char* assignment1, const char* structure2,
                            const char* assignment2, nf_format format, char** out);

/* Catalog regression. `threads` = 0 uses all cores. *table_ok and *all_ok
 * may be null. */
NF_API nf_status nf_verify(uint64_t seed, unsigned threads, nf_format format, char** out, int* table_ok,
                           int* all_ok);

#ifdef __cplusplus
}
#endif

#endif /* NILFLEX_H */
