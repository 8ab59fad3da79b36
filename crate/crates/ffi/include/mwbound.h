/* C interface for the mwbound degree bound toolkit. */

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Which family of groups a request refers to.
typedef enum MwbGroupKind {
  // su(p,q); the fields p and q are read, n is ignored.
  MWB_GROUP_KIND_SU = 0,
  // sp(2n,R); the field n is read, p and q are ignored.
  MWB_GROUP_KIND_SP = 1,
} MwbGroupKind;

// Status code returned by every fallible entry point.
typedef enum MwbStatus {
  MWB_STATUS_OK = 0,
  // A required pointer argument was null.
  MWB_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  MWB_STATUS_INVALID_UTF8 = 2,
  // An argument was outside its domain (bad group parameters, malformed
  // volume, ...).
  MWB_STATUS_INVALID_ARGUMENT = 3,
  // The computation itself failed; see mwb_last_error_message.
  MWB_STATUS_COMPUTATION_FAILED = 4,
} MwbStatus;

// Opaque handle to a finished degree bound report.
typedef struct MwbReport MwbReport;

// Group selector passed by value. Unused fields may hold anything.
typedef struct MwbGroup {
  enum MwbGroupKind kind;
  uint32_t p;
  uint32_t q;
  uint32_t n;
} MwbGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failing call on this thread, or null if no
// call has failed yet. The pointer stays valid until the next failing call
// on the same thread; do not free it.
const char *mwb_last_error_message(void);

// Builds a degree bound report for `group` over a surface of volume `vol`
// (a rational like "100" or "77/10", as UTF-8). `pi_bits` of 0 selects the
// default enclosure width; `trials` sampled identity trials feed the
// report's certificates. On success writes a handle to `out`.
//
// # Safety
// `vol` must point to a NUL terminated string and `out` to writable
// storage for one pointer.
enum MwbStatus mwb_report_build(struct MwbGroup group,
                                const char *vol,
                                uint64_t seed,
                                uint32_t trials,
                                uint32_t pi_bits,
                                struct MwbReport **out);

// Serializes the report as pretty printed JSON. The caller owns the
// returned string.
//
// # Safety
// `report` must be a live handle from mwb_report_build and `out` writable
// storage for one pointer.
enum MwbStatus mwb_report_json(const struct MwbReport *report, char **out);

// Serializes the report's degree table as CSV. The caller owns the
// returned string.
//
// # Safety
// `report` must be a live handle from mwb_report_build and `out` writable
// storage for one pointer.
enum MwbStatus mwb_report_csv(const struct MwbReport *report, char **out);

// Real rank of the group the report was built for.
//
// # Safety
// `report` must be a live handle and `out` writable storage for one u32.
enum MwbStatus mwb_report_rank(const struct MwbReport *report, uint32_t *out);

// Largest degree the certified bound admits.
//
// # Safety
// `report` must be a live handle and `out` writable storage for one u64.
enum MwbStatus mwb_report_max_degree(const struct MwbReport *report, uint64_t *out);

// Pairing constant of the admissible representation, as canonical rational
// text. The caller owns the returned string.
//
// # Safety
// `report` must be a live handle and `out` writable storage for one
// pointer.
enum MwbStatus mwb_report_c_sigma(const struct MwbReport *report, char **out);

// Runs the structural check battery for `group` plus `trials` sampled
// identity trials. Returns MWB_STATUS_OK when everything holds.
enum MwbStatus mwb_verify(struct MwbGroup group, uint64_t seed, uint32_t trials);

// Checks the defining identities of the sp(2n,R) to su(n,n) embedding.
enum MwbStatus mwb_check_embedding(uint32_t n);

// Releases a report handle. Null is a no-op.
//
// # Safety
// `report` must be null or a handle from mwb_report_build that has not
// been freed yet.
void mwb_report_free(struct MwbReport *report);

// Releases a string produced by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string returned by this library that has not been
// freed yet.
void mwb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
