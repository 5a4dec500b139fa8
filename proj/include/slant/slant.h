/* C interface to the slant curve toolkit.
 *
 * Objects are opaque handles. Every call that can fail returns a
 * slant_status; the message of the last failure on the calling thread is
 * available from slant_last_error(). Strings returned through char** out
 * parameters are owned by the caller and released with slant_string_free().
 */
#ifndef SLANT_SLANT_H
#define SLANT_SLANT_H

#include <stdint.h>

#if defined(SLANT_BUILDING_LIBRARY)
#define SLANT_API __attribute__((visibility("default")))
#else
#define SLANT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slant_status {
    SLANT_OK = 0,
    SLANT_ERR_USAGE = 1,
    SLANT_ERR_PARSE = 2,
    SLANT_ERR_DOMAIN = 3,
    SLANT_ERR_NUMERIC = 4,
    SLANT_ERR_IO = 5,
    SLANT_ERR_INTERNAL = 6
} slant_status;

typedef enum slant_verdict {
    SLANT_VERDICT_PASS = 0,
    SLANT_VERDICT_FAIL = 1,
    SLANT_VERDICT_INCONSISTENT = 2
} slant_verdict;

typedef struct slant_curve slant_curve;
typedef struct slant_options slant_options;

SLANT_API const char* slant_version(void);
SLANT_API const char* slant_status_name(slant_status status);
/* Message of the most recent failure on this thread ("" if none). */
SLANT_API const char* slant_last_error(void);
SLANT_API void slant_string_free(char* s);

/* Options; a NULL options pointer means defaults everywhere. */
SLANT_API slant_options* slant_options_new(void);
SLANT_API void slant_options_free(slant_options* opts);
/* Parameter grid for symbolic curves, or the output grid for synth. */
SLANT_API slant_status slant_options_set_grid(slant_options* opts, double t_min, double t_max, int n);
/* Names: speed, rank, rank_sampled, slant, class, lambda, constant, span,
 * checklist, quad, tensor, connection. */
SLANT_API slant_status slant_options_set_tolerance(slant_options* opts, const char* name, double value);
SLANT_API slant_status slant_options_set_seed(slant_options* opts, uint64_t seed);
SLANT_API slant_status slant_options_set_axiom_samples(slant_options* opts, int samples);

/* Curves. */
SLANT_API slant_status slant_curve_parse(const char* text, slant_curve** out);
SLANT_API slant_status slant_curve_load(const char* path, slant_curve** out);
/* CSV with header t,c1..cn,E1_1..E1_n[,...]; m or s <= 0 means unspecified. */
SLANT_API slant_status slant_curve_load_sampled(const char* path, int m, int s, slant_curve** out);
SLANT_API slant_status slant_curve_parse_sampled(const char* csv, int m, int s, slant_curve** out);
SLANT_API slant_status slant_curve_bundled(const char* name, slant_curve** out);
/* Newline-separated names of the bundled curves. */
SLANT_API slant_status slant_bundled_names(char** names);
SLANT_API slant_status slant_curve_shape(const slant_curve* curve, int* m, int* s);
SLANT_API void slant_curve_free(slant_curve* curve);

/* Commands. json, csv and verdict may be NULL when not wanted; csv is set
 * to NULL when the command produced no table. */
SLANT_API slant_status slant_axioms(int m, int s, const slant_options* opts, char** json, slant_verdict* verdict);
SLANT_API slant_status slant_analyze(const slant_curve* curve, const slant_options* opts, char** json, char** csv,
                                     slant_verdict* verdict);
/* which: parallel-tangent, parallel-normal, proper-tangent, proper-normal. */
SLANT_API slant_status slant_classify(const slant_curve* curve, const char* which, const slant_options* opts,
                                      char** json, slant_verdict* verdict);
/* theorem 1 uses theta, theorem 2 uses kappa1. */
SLANT_API slant_status slant_synth(int theorem, int m, int s, double theta, double kappa1,
                                   const slant_options* opts, char** json, char** csv, slant_verdict* verdict);
SLANT_API slant_status slant_example(int which, const slant_options* opts, char** json, slant_verdict* verdict);

#ifdef __cplusplus
}
#endif

#endif
