#ifndef TWISTCHAR_H
#define TWISTCHAR_H

/* C interface to the twisted-character library. All functions return a
 * status code; on failure twc_last_error() describes the problem. Strings
 * returned through out parameters are owned by the caller and released with
 * twc_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum twc_status {
    TWC_OK = 0,
    TWC_EINVAL = 1,  /* bad arguments: unknown type, kind, malformed rational */
    TWC_ERUNTIME = 2, /* internal computation failure */
    TWC_EIO = 3       /* cache or file system failure */
} twc_status;

typedef struct twc_folded twc_folded;
typedef struct twc_series twc_series;

typedef struct twc_options {
    const char* cache_dir; /* NULL: resolved from TWISTCHAR_CACHE / defaults */
    int no_cache;          /* nonzero disables the multiplicity cache */
    int jobs;              /* worker cap, 0 = default; results never depend on it */
    long long ball_slack;  /* extra squared radius on the translation ball */
} twc_options;

const char* twc_version(void);

/* message for the most recent failure on this thread */
const char* twc_last_error(void);

void twc_string_free(char* text);

twc_status twc_folded_create(const char* type_token, twc_folded** out);
void twc_folded_free(twc_folded* folded);
twc_status twc_folded_to_json(const twc_folded* folded, char** out_json);

/* kind: one of "theta", "fock", "level1", "principal", "principal-enum",
 * "parafermionic", "parafermionic-enum", "module", "oracle".
 * truncation is a rational string "n" or "n/d"; the smallest positive
 * grade is 1/r for twist order r. */
twc_status twc_char(const twc_folded* folded, const char* kind, int level,
                    const char* truncation, const twc_options* options, twc_series** out);

/* format: "json", "csv" or "pretty" */
twc_status twc_series_format(const twc_series* series, const char* format, char** out_text);
void twc_series_free(twc_series* series);

/* runs every comparison applicable to the type; *out_all_pass is 1 when the
 * whole report passed */
twc_status twc_verify(const char* type_token, int level, const char* truncation,
                      const twc_options* options, char** out_report_json, int* out_all_pass);

twc_status twc_cache_stat(const char* dir, char** out_json);
twc_status twc_cache_clear(const char* dir, long long* out_removed);

#ifdef __cplusplus
}
#endif

#endif /* TWISTCHAR_H */
