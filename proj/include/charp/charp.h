#ifndef CHARP_H
#define CHARP_H

#include <stdint.h>

#if defined(_WIN32)
#define CHARP_API __declspec(dllexport)
#else
#define CHARP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct charp_ring charp_ring;

typedef enum charp_status {
  CHARP_OK = 0,
  CHARP_E_INPUT = 1,
  CHARP_E_THEOREM = 2,
  CHARP_E_BUDGET = 3,
  CHARP_E_SIZE_GUARD = 4,
  CHARP_E_NOT_COFINITE = 5,
  CHARP_E_INTERNAL = 6
} charp_status;

CHARP_API const char* charp_version(void);

/* Message of the last failure on this thread; empty after a success. */
CHARP_API const char* charp_last_error(void);

CHARP_API int charp_ring_load(const char* path, charp_ring** out);
CHARP_API int charp_ring_parse(const char* text, const char* name, charp_ring** out);
CHARP_API void charp_ring_free(charp_ring* ring);
CHARP_API const char* charp_ring_name(const charp_ring* ring);

/*
 * Runs a command ("hk", "betti", "chi", "split", "splitprime", "fpure",
 * "sfr", "stratify", "check-all") with options given as a JSON object, or
 * NULL. On CHARP_OK and CHARP_E_THEOREM the report is stored in *report_json
 * and must be released with charp_string_free.
 */
CHARP_API int charp_run(const charp_ring* ring, const char* command, const char* options_json,
                        char** report_json);

/* Renders the "table" of a report as CSV. */
CHARP_API int charp_report_csv(const char* report_json, char** csv);

CHARP_API void charp_string_free(char* s);

/* Names: "budget" (Groebner pairs), "max_generators", "layer_bound", "jobs". */
CHARP_API int charp_set_limit(const char* name, uint64_t value);
CHARP_API uint64_t charp_get_limit(const char* name);

#ifdef __cplusplus
}
#endif

#endif
