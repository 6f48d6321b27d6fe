/* boxpoly: minimize sparse polynomials over the unit hypercube by hidden-
 * binary detection, local block elimination, and tree-decomposition dynamic
 * programming on the reduced binary problem.
 *
 * All functions return a bxp_status. On failure *out (when present) receives
 * a JSON error object {"error": {"code": "...", "message": "..."}}. Strings
 * returned through char** are heap-allocated; release them with
 * bxp_string_free. Handles are opaque and released with bxp_poly_free.
 */
#ifndef BOXPOLY_H
#define BOXPOLY_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bxp_status {
    BXP_OK = 0,
    BXP_ERR_PARSE = 10,      /* malformed input document */
    BXP_ERR_INVALID = 11,    /* precondition violated */
    BXP_ERR_DEGREE = 12,     /* operation needs lower degree */
    BXP_ERR_CAP = 13,        /* configured size/budget cap hit */
    BXP_ERR_ASSUMPTION = 14, /* structural assumptions not certified */
    BXP_ERR_INTERNAL = 15    /* invariant broken (bug) */
} bxp_status;

typedef struct bxp_poly bxp_poly;

const char* bxp_status_name(int status);

/* Instance JSON: {"n": int, "terms": [{"coef": "p" | "p/q",
 * "exps": [[var, exp], ...]}, ...]}. */
int bxp_poly_parse(const char* json_text, bxp_poly** out_poly, char** out_error);
int bxp_poly_serialize(const bxp_poly* poly, char** out_json);
void bxp_poly_free(bxp_poly* poly);
int bxp_poly_nvars(const bxp_poly* poly);
int bxp_poly_degree(const bxp_poly* poly);

/* options JSON (all keys optional):
 *   {"tw_max": int, "itw_max": int, "block_max": int, "nbr_max": int,
 *    "tol": double, "force": bool, "timings": bool, "witness": bool}
 * Negative bounds mean automatic (ceil(log2 n) + 4; block 20/4 by degree). */
int bxp_analyze(const bxp_poly* poly, const char* options_json, char** out_json);
int bxp_solve(const bxp_poly* poly, const char* options_json, char** out_json);

/* options JSON: {"grid": int points per dimension (0 = auto), "polish": bool} */
int bxp_oracle(const bxp_poly* poly, const char* options_json, char** out_json);

/* spec JSON: {"kind": "path-blocks" | "tree-backbone" | "random-sparse",
 *  "m": int, "block_size": int, "nbr_size": int, "degree": int,
 *  "seed": int, "coef_range": int}. Emits an instance document plus the
 * bounds the instance is generated to satisfy:
 *   {"instance": {...}, "bounds": {...}}. */
int bxp_generate(const char* spec_json, char** out_json);

void bxp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BOXPOLY_H */
