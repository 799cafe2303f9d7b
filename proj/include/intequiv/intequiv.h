#ifndef INTEQUIV_H
#define INTEQUIV_H

/* C interface to the intequiv library. Every function returns an ieq_status;
 * on failure ieq_last_error() describes the problem for the calling thread.
 * Strings handed out through char** must be released with ieq_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IEQ_API __declspec(dllexport)
#else
#define IEQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ieq_status {
  IEQ_OK = 0,
  IEQ_ERR_INVALID_ARGUMENT = 1,
  IEQ_ERR_PARSE = 2,
  IEQ_ERR_SCHEMA = 3,
  IEQ_ERR_PRECONDITION = 4,
  IEQ_ERR_CAP_EXCEEDED = 5,
  IEQ_ERR_NOT_FOUND = 6,
  IEQ_ERR_BUDGET_EXHAUSTED = 7,
  IEQ_ERR_LOCAL_OBSTRUCTION = 8,
  IEQ_ERR_VERIFICATION_FAILED = 9,
  IEQ_ERR_INTERNAL = 10
} ieq_status;

typedef struct ieq_group ieq_group;
typedef struct ieq_triple ieq_triple;
typedef struct ieq_basis ieq_basis;

IEQ_API const char* ieq_version(void);
IEQ_API const char* ieq_status_name(ieq_status s);
IEQ_API const char* ieq_last_error(void);
IEQ_API void ieq_string_free(char* s);
/* 0 selects the hardware concurrency. Results never depend on it. */
IEQ_API ieq_status ieq_set_threads(unsigned n);

/* psl2:P, pgl2:P, psl3_2 or a5pair:P. Writes a group/v1 or triple/v1
 * document. The seed only affects a5pair; 0 selects the default seed. */
IEQ_API ieq_status ieq_make_named(const char* name, uint64_t seed, char** json_out);

/* Schema check of any artifact; rebuilds groups, triples and bases. */
IEQ_API ieq_status ieq_validate(const char* json);

IEQ_API ieq_status ieq_group_from_json(const char* json, ieq_group** out);
IEQ_API ieq_status ieq_group_order(const ieq_group* g, uint64_t* order);
IEQ_API void ieq_group_free(ieq_group* g);

IEQ_API ieq_status ieq_triple_from_json(const char* json, ieq_triple** out);
/* Group document plus two subgroup documents ({"generators": [...]}). */
IEQ_API ieq_status ieq_triple_from_parts(const char* group_json, const char* h1_json,
                                         const char* h2_json, ieq_triple** out);
IEQ_API ieq_status ieq_triple_to_json(const ieq_triple* t, char** json_out);
IEQ_API void ieq_triple_free(ieq_triple* t);

/* gassmann-report/v1; text_out (optional) receives a printable table. */
IEQ_API ieq_status ieq_triple_check(const ieq_triple* t, char** json_out,
                                    char** text_out);
/* Same check for the images of H1, H2 in G/N, N given by generators
 * ({"generators": [...]}). */
IEQ_API ieq_status ieq_quotient_check(const ieq_triple* t, const char* normal_json,
                                      char** json_out);
IEQ_API ieq_status ieq_splitting_tables(const ieq_triple* t, char** json_out,
                                        char** text_out);

IEQ_API ieq_status ieq_basis_from_triple(const ieq_triple* t, ieq_basis** out);
IEQ_API ieq_status ieq_basis_from_json(const char* json, ieq_basis** out);
IEQ_API ieq_status ieq_basis_to_json(const ieq_basis* b, char** json_out);
IEQ_API ieq_status ieq_basis_size(const ieq_basis* b, uint64_t* m);
IEQ_API void ieq_basis_free(ieq_basis* b);

typedef struct ieq_search_options {
  const char* strategy; /* "box", "random" or "crt"; NULL means box */
  int64_t radius;       /* 0 means 2 */
  uint64_t budget;      /* exact determinant evaluations; 0 = unlimited */
  uint64_t seed;
  int skip_local_preflight; /* nonzero skips the exhaustive check at small p */
} ieq_search_options;

/* IEQ_OK with a unimodular-cert/v1 document, IEQ_ERR_BUDGET_EXHAUSTED or
 * IEQ_ERR_LOCAL_OBSTRUCTION with a search-report/v1 document. */
IEQ_API ieq_status ieq_search(const ieq_basis* b, const ieq_search_options* opt,
                              char** json_out);

/* IEQ_OK when the certificate holds, IEQ_ERR_VERIFICATION_FAILED otherwise;
 * message_out names the failed relation or a summary of success. */
IEQ_API ieq_status ieq_certificate_verify(const char* cert_json, char** message_out);

/* norm-exponents/v1 for a certificate. */
IEQ_API ieq_status ieq_norm_exponents(const char* cert_json, char** json_out);

/* obstruction-report/v1. family: NULL or "default" for the cyclic family;
 * otherwise a comma list of "trivial", "regular" and "order:N" (members of
 * the cyclic family of element order N). */
IEQ_API ieq_status ieq_obstruct_compare(const ieq_triple* t, const char* family,
                                        char** json_out);

/* local-solvability/v1 at p over the smallest field F_{p^k} with p^k > 2n. */
IEQ_API ieq_status ieq_local_solvability(const ieq_basis* b, uint64_t p,
                                         uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
