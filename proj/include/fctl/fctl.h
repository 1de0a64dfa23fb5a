#ifndef FCTL_H
#define FCTL_H

/* C interface to the control-calculi workbench. All functions return a
 * status code; every returned string is heap-allocated and must be released
 * with fctl_free_string. Handles are opaque and freed with their paired
 * free function. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum fctl_status {
  FCTL_OK = 0,
  FCTL_ERR_INPUT = 1,    /* parse or type error */
  FCTL_ERR_STUCK = 2,    /* evaluation reached a non-value without a redex */
  FCTL_ERR_FUEL = 3,     /* step budget exhausted */
  FCTL_ERR_PROPERTY = 4, /* property suite or engine-agreement failure */
  FCTL_ERR_INVALID = 5   /* bad arguments or inconsistent handle use */
};

typedef struct fctl_program fctl_program;

const char* fctl_version(void);

void fctl_free_string(char* s);

/* Parses a program. `family`/`strategy` ("abortive"|"delimited",
 * "cbv"|"cbn") override the source's #mode header and may be NULL to use
 * the header alone. `allow_reified` admits captured-context literals. */
int fctl_parse(const char* src, const char* family, const char* strategy,
               int allow_reified, fctl_program** out, char** error);

void fctl_program_free(fctl_program* p);

/* Pretty-prints the program. */
int fctl_render(const fctl_program* p, char** text);

/* Reports the program's resolved mode. */
int fctl_program_mode(const fctl_program* p, char** family, char** strategy);

/* Typechecks; on success *type_text receives the program type. */
int fctl_check(const fctl_program* p, char** type_text, char** error);

/* Evaluates with the reduction semantics. *result_text receives the final
 * value (or last program on stuck/fuel). Status reflects the outcome. */
int fctl_eval(const fctl_program* p, uint64_t fuel, char** result_text,
              char** error);

/* Full reduction trace as JSON. Status reflects the final outcome. */
int fctl_trace(const fctl_program* p, uint64_t fuel, char** json);

/* Abstract-machine trace as JSON. Status reflects the final outcome. */
int fctl_machine_trace(const fctl_program* p, uint64_t fuel, char** json);

/* Evaluates with the abstract machine; same contract as fctl_eval. */
int fctl_machine_eval(const fctl_program* p, uint64_t fuel,
                      char** result_text, char** error);

/* Steps the program `count` times (stops early at a value). *out receives
 * the resulting program handle on success. */
int fctl_step(const fctl_program* p, uint64_t count, fctl_program** out,
              char** error);

/* Decomposition of the current program as JSON; with `all` nonzero, every
 * grammar-valid split instead of the canonical one. */
int fctl_decompose(const fctl_program* p, int all, char** json);

/* Runs the property suite: `count` generated programs for the given mode.
 * *report receives the report, JSON when as_json is nonzero and plain text
 * otherwise; FCTL_ERR_PROPERTY on any failure. */
int fctl_fuzz(const char* family, const char* strategy, uint64_t seed,
              uint64_t count, int max_depth, int as_json, char** report,
              char** error);

#ifdef __cplusplus
}
#endif

#endif /* FCTL_H */
