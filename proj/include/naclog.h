/*
 * naclog - decision procedures for non-associative linear logics and
 * residuated groupoid semantics, behind a plain C interface.
 *
 * All functions taking a naclog_ctx report failures by returning NULL (for
 * pointer results) or NACLOG_ERROR (for int results) and leave a message
 * readable through naclog_last_error. Strings returned through char** or
 * char* results are heap-allocated; release them with naclog_string_free.
 */
#ifndef NACLOG_H
#define NACLOG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define NACLOG_OK 0
#define NACLOG_ERROR 1
#define NACLOG_EXHAUSTED 2

typedef struct naclog_ctx naclog_ctx;
typedef struct naclog_logic naclog_logic;
typedef struct naclog_algebra naclog_algebra;

naclog_ctx* naclog_ctx_new(void);
void naclog_ctx_free(naclog_ctx* ctx);
const char* naclog_last_error(const naclog_ctx* ctx);

void naclog_string_free(char* s);
const char* naclog_version(void);

/* ----- calculus descriptors ------------------------------------------- */

/* Spec strings: fnl, infnl, cyinfnl, nacill, nacill0, naccll-, naccll,
 * optionally "+<letters>" from {e,c,i,o,w,a}; "w" = i+o.            */
naclog_logic* naclog_logic_parse(naclog_ctx* ctx, const char* spec);
void naclog_logic_free(naclog_logic* logic);

/* ----- sequents --------------------------------------------------------*/

/* Parses and reprints a sequent (canonical spacing); validates against the
 * logic's fragment when logic is non-NULL. */
char* naclog_sequent_roundtrip(naclog_ctx* ctx, const naclog_logic* logic, const char* text);

/* ----- finite algebras ------------------------------------------------ */

naclog_algebra* naclog_algebra_parse(naclog_ctx* ctx, const char* text);
void naclog_algebra_free(naclog_algebra* a);
char* naclog_algebra_print(naclog_ctx* ctx, const naclog_algebra* a);
int naclog_algebra_size(const naclog_algebra* a);

/* Class strings: rlug, rlug0, interior, interior0, inrlug, cyinrlug,
 * nacill, nacill0, naccll-, naccll, plus "+" tokens (letter runs like "ec"
 * or !e !c !i !a1 !a2). *report receives "ok" or the first violated law. */
int naclog_check_algebra(naclog_ctx* ctx, const naclog_algebra* a, const char* cls,
                         char** report);

/* One representative per isomorphism class, deterministic order. */
int naclog_enumerate(naclog_ctx* ctx, int n, const char* cls, naclog_algebra*** out,
                     size_t* count);
void naclog_algebra_array_free(naclog_algebra** arr, size_t count);

/* Dedekind-MacNeille completion of an interior rlu(z)-groupoid. */
naclog_algebra* naclog_complete(naclog_ctx* ctx, const naclog_algebra* a);

/* Cyclic involutive extension A* of an rlu-groupoid (adds neg table). */
naclog_algebra* naclog_star(naclog_ctx* ctx, const naclog_algebra* a);

/* Central-core conucleus completion of an involutive rluz-groupoid. */
naclog_algebra* naclog_dcore(naclog_ctx* ctx, const naclog_algebra* a);

/* FEP frame F_{A,B} over the partial subalgebra on the carrier elements in
 * b (with_zero != 0 builds the B0 variant). Returns the closed-set algebra;
 * *report receives the embedding verification summary and the closed-set
 * count, *frame_text (optional) the serialized frame. */
naclog_algebra* naclog_fep(naclog_ctx* ctx, const naclog_algebra* a, const int* b, size_t b_len,
                           int with_zero, char** report, char** frame_text);

/* ----- hypothesis internalization -------------------------------------- */

/* (goal antecedent o (tau(s1) o ... o tau(sn))) => goal succedent.
 * Validates fragments when logic is non-NULL. */
char* naclog_translate(naclog_ctx* ctx, const naclog_logic* logic,
                       const char* const* assumptions, size_t n_assumptions, const char* goal);

/* ----- the decision procedure ------------------------------------------ */

typedef struct naclog_limits {
    int backward_depth;   /* cut-free search depth              (default 12) */
    int forward_start;    /* forward size schedule start        (default 8)  */
    int forward_step;     /*                        step        (default 4)  */
    int forward_stages;   /*                        stages      (default 3)  */
    int algebra_max;      /* 0 = class default (3 with !, 4 without)         */
    long long work_budget; /* total quanta                  (default 4000000) */
    long long budget_ms;  /* wall-clock backstop            (default 60000)  */
} naclog_limits;

void naclog_limits_default(naclog_limits* lim);

#define NACLOG_MODE_DECIDE 0 /* prover and refuter interleaved  */
#define NACLOG_MODE_PROVE 1  /* cut-free backward fast path only */
#define NACLOG_MODE_REFUTE 2 /* countermodel enumeration only    */

/* Returns NACLOG_OK for a definite verdict, NACLOG_EXHAUSTED when the
 * limits ran out, NACLOG_ERROR otherwise. *record receives the JSON record,
 * *human (optional) a one-line rendering. */
int naclog_decide(naclog_ctx* ctx, const naclog_logic* logic, const char* const* assumptions,
                  size_t n_assumptions, const char* goal, const naclog_limits* lim, int mode,
                  char** record, char** human);

/* Runs the library invariant suites at desk scale. Returns NACLOG_OK when
 * everything holds; *report carries one line per suite. */
int naclog_selftest(naclog_ctx* ctx, int verbose, char** report);

#ifdef __cplusplus
}
#endif

#endif /* NACLOG_H */
