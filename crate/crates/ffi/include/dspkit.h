#ifndef DSPKIT_H
#define DSPKIT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum DspStatus {
  DSP_STATUS_OK = 0,
  DSP_STATUS_NULL_ARGUMENT = 1,
  DSP_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, partitions, eigenvalues or tuples.
  DSP_STATUS_INVALID_INPUT = 3,
  // The question is outside the scope of the available procedures.
  DSP_STATUS_NOT_APPLICABLE = 4,
  // A search budget or size cap was exhausted.
  DSP_STATUS_RESOURCE_EXCEEDED = 5,
  DSP_STATUS_UNKNOWN_COMMAND = 6,
  // A Rust panic was caught at the boundary.
  DSP_STATUS_INTERNAL = 7,
} DspStatus;

typedef enum DspVerdict {
  DSP_VERDICT_SOLVABLE = 0,
  DSP_VERDICT_NOT_SOLVABLE = 1,
  DSP_VERDICT_UNKNOWN = 2,
} DspVerdict;

// Opaque parsed problem.
typedef struct DspProblem DspProblem;

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library from this thread.
const char *dsp_last_error(void);

// Library version as a static string.
const char *dsp_version(void);

// Parses a problem from JSON text into a new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum DspStatus dsp_problem_parse(const char *json, struct DspProblem **out);

// Releases a handle from [`dsp_problem_parse`]. Null is ignored.
//
// # Safety
// `problem` must come from [`dsp_problem_parse`] and not be freed twice.
void dsp_problem_free(struct DspProblem *problem);

// Matrix size n of the problem.
//
// # Safety
// `problem` must be a live handle and `out` writable.
enum DspStatus dsp_problem_size(const struct DspProblem *problem, size_t *out);

// Index of rigidity 2n² − Σ dim of the classes.
//
// # Safety
// `problem` must be a live handle and `out` writable.
enum DspStatus dsp_problem_rigidity_index(const struct DspProblem *problem, int64_t *out);

// Solvability for generic eigenvalues, or of the weak problem when `weak`
// is set (which needs an entry with distinct eigenvalues).
//
// # Safety
// `problem` must be a live handle and `out` writable.
enum DspStatus dsp_problem_decide(const struct DspProblem *problem,
                                  bool weak,
                                  enum DspVerdict *out);

// JSON report for `command`: one of `invariants`, `decide`,
// `decide-weak`, `generic`, `classify` or `realize` (default budget with
// the given seed). The string must be freed with [`dsp_string_free`].
//
// # Safety
// `problem` must be a live handle, `command` a NUL-terminated string and
// `out` writable.
enum DspStatus dsp_problem_report(const struct DspProblem *problem,
                                  const char *command,
                                  uint64_t seed,
                                  char **out);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void dsp_string_free(char *s);

#endif  /* DSPKIT_H */
