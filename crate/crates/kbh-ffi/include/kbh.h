/* kbh C API. Generated by cbindgen; do not edit by hand. */

#ifndef KBH_H
#define KBH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KbhStatus {
  KBH_STATUS_OK = 0,
  KBH_STATUS_NULL_ARGUMENT = 1,
  KBH_STATUS_INVALID_UTF8 = 2,
  KBH_STATUS_PARSE_ERROR = 3,
  KBH_STATUS_UNKNOWN_NAME = 4,
  KBH_STATUS_INVALID_INPUT = 5,
  KBH_STATUS_EMPTY_DIAGRAM = 6,
  KBH_STATUS_INTERNAL_ERROR = 7,
} KbhStatus;

/**
 * Opaque link diagram handle.
 */
typedef struct KbhDiagram KbhDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a diagram from PD notation, e.g. `PD[X(1,4,2,3), X(3,2,4,1)]`.
 */
enum KbhStatus kbh_diagram_from_pd(const char *pd, struct KbhDiagram **out);

/**
 * Closure of a braid word; letter k means σ_k, negative letters invert.
 */
enum KbhStatus kbh_diagram_from_braid(const int64_t *word,
                                      size_t len,
                                      uint32_t strands,
                                      struct KbhDiagram **out);

/**
 * Look up a named diagram from the built-in catalog.
 */
enum KbhStatus kbh_diagram_builtin(const char *name, struct KbhDiagram **out);

void kbh_diagram_free(struct KbhDiagram *d);

void kbh_string_free(char *s);

enum KbhStatus kbh_diagram_crossing_count(const struct KbhDiagram *d, uint32_t *out);

enum KbhStatus kbh_diagram_writhe(const struct KbhDiagram *d, int64_t *out);

/**
 * ⟨D⟩ in canonical text form, descending exponents.
 */
enum KbhStatus kbh_bracket(const struct KbhDiagram *d, char **out);

/**
 * The oriented invariant f = (−A³)^(−w)⟪D⟫.
 */
enum KbhStatus kbh_kauffman_f(const struct KbhDiagram *d, char **out);

/**
 * ⟪D⟫, the unnormalized bracket.
 */
enum KbhStatus kbh_unnormalized_bracket(const struct KbhDiagram *d, char **out);

/**
 * FKh(D) = Σ t^i A^j rk H_{i,j}, grouped by t in the text form.
 */
enum KbhStatus kbh_framed_poincare(const struct KbhDiagram *d, char **out);

/**
 * Framed homology as JSON:
 * `{"invariant":"framed","groups":[{"i":0,"j":-2,"rank":1,"torsion":[]},…]}`.
 */
enum KbhStatus kbh_framed_homology_json(const struct KbhDiagram *d, char **out);

/**
 * Oriented homology as JSON, same shape as the framed variant.
 */
enum KbhStatus kbh_oriented_homology_json(const struct KbhDiagram *d, char **out);

/**
 * Khovanov homology as JSON:
 * `{"invariant":"khovanov","groups":[{"k":0,"q":1,"rank":1,"torsion":[]},…]}`.
 */
enum KbhStatus kbh_khovanov_homology_json(const struct KbhDiagram *d, char **out);

/**
 * Static version string; do not free.
 */
const char *kbh_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KBH_H */
