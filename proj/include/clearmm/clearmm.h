#ifndef CLEARMM_CLEARMM_H
#define CLEARMM_CLEARMM_H

/* C interface to the Clear Mastermind engine.
 *
 * Every fallible call returns a cmm_status; on failure cmm_last_error() holds a
 * message for the calling thread. Strings are written NUL-terminated into
 * caller buffers; a buffer that is too small yields CMM_BUFFER_TOO_SMALL.
 * Handles are opaque and owned by the caller until passed to *_destroy. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CMM_API __declspec(dllexport)
#else
#define CMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmm_status {
  CMM_OK = 0,
  CMM_INVALID_INPUT = 1,
  CMM_INCONSISTENT = 2,
  CMM_INVALID_STATE = 3,
  CMM_INVALID_CONFIGURATION = 4,
  CMM_RESOURCE_EXHAUSTED = 5,
  CMM_NOT_FOUND = 6,
  CMM_BUFFER_TOO_SMALL = 7,
  CMM_INTERNAL = 8
} cmm_status;

/* Enough for any code string the engine accepts. */
#define CMM_CODE_TEXT 72

CMM_API const char* cmm_version(void);
CMM_API const char* cmm_status_name(cmm_status status);
CMM_API const char* cmm_last_error(void);

typedef void (*cmm_line_callback)(const char* line, void* user);

/* ---- rules ------------------------------------------------------------- */

/* kind: "pi" (G/Y/B) or "tau" (+/-). */
CMM_API cmm_status cmm_feedback(const char* answer, const char* guess, const char* kind,
                                char* out, size_t capacity);
CMM_API cmm_status cmm_tau_from_pi(const char* pi, char* out, size_t capacity);
/* counts[v - 1] is the number of occurrences of code v in the answer. */
CMM_API cmm_status cmm_pi_from_tau(const char* tau, const int* counts, int k, const char* guess,
                                   char* out, size_t capacity);

/* ---- answer sets ------------------------------------------------------- */

typedef struct cmm_answer_set cmm_answer_set;

/* mode: "full" or "permutation" (hit/miss feedback). */
CMM_API cmm_status cmm_answer_set_full(int k, int n, const char* mode, cmm_answer_set** out);
/* feedback in the encoding of the set's mode. */
CMM_API cmm_status cmm_answer_set_filter(const cmm_answer_set* set, const char* guess,
                                         const char* feedback, cmm_answer_set** out);
CMM_API size_t cmm_answer_set_size(const cmm_answer_set* set);
/* Members are in lexicographic order; an index past the end is CMM_NOT_FOUND. */
CMM_API cmm_status cmm_answer_set_member(const cmm_answer_set* set, size_t index, char* out,
                                         size_t capacity);
CMM_API void cmm_answer_set_destroy(cmm_answer_set* set);

/* ---- solver ------------------------------------------------------------ */

typedef struct cmm_solver_options {
  uint64_t node_cap;    /* 0: unlimited */
  uint64_t time_cap_ms; /* 0: unlimited */
  uint64_t memo_cap;
  int canonicalize;
  int code_symmetry;
  int root_symmetry;
  int members_only;
} cmm_solver_options;

CMM_API void cmm_solver_options_init(cmm_solver_options* options);

typedef struct cmm_solve_result {
  int k;
  int n;
  int value;        /* 0 when the budget ran out */
  int lower;        /* proven bounds for (k, n) */
  int upper;
  int within_bounds;
  int known_lower;  /* on CMM_RESOURCE_EXHAUSTED: what the search established */
  int known_upper;
  uint64_t nodes_expanded;
  uint64_t memo_hits;
  double elapsed_ms;
  char first_guess[CMM_CODE_TEXT];
  char record[512]; /* key=value line for the results table */
} cmm_solve_result;

/* options may be NULL for defaults. */
CMM_API cmm_status cmm_solve_F(int k, int n, const cmm_solver_options* options,
                               cmm_solve_result* out);
CMM_API cmm_status cmm_solve_G(int k, const cmm_solver_options* options, cmm_solve_result* out);
CMM_API cmm_status cmm_theorem_bounds(int k, int n, int* lower, int* upper);

/* ---- games ------------------------------------------------------------- */

typedef struct cmm_game cmm_game;

typedef struct cmm_game_config {
  int k;
  int n;
  const char* mode;     /* "full" or "permutation" */
  const char* feedback; /* NULL: the mode's default */
  const char* opponent; /* "fixed", "greedy" or "max-class" */
  const char* answer;   /* fixed opponent only; NULL: drawn from the seed */
  int has_seed;
  uint64_t seed;
} cmm_game_config;

typedef struct cmm_round_result {
  char feedback[32];
  int round;
  uint64_t set_size;
  int solved;
} cmm_round_result;

typedef struct cmm_hint {
  int available;
  char guess[CMM_CODE_TEXT];
  int worst_case;
  char reason[256];
} cmm_hint;

CMM_API cmm_status cmm_game_create(const cmm_game_config* config, cmm_game** out);
CMM_API cmm_status cmm_game_guess(cmm_game* game, const char* guess, cmm_round_result* out);
/* node_cap / time_cap_ms of 0 keep the defaults. */
CMM_API cmm_status cmm_game_hint(cmm_game* game, uint64_t node_cap, uint64_t time_cap_ms,
                                 cmm_hint* out);
CMM_API int cmm_game_round(const cmm_game* game);
CMM_API uint64_t cmm_game_set_size(const cmm_game* game);
/* "live", "solved" or "abandoned". */
CMM_API const char* cmm_game_status(const cmm_game* game);
CMM_API uint64_t cmm_game_seed(const cmm_game* game);
/* Available once the game is solved. */
CMM_API cmm_status cmm_game_answer(const cmm_game* game, char* out, size_t capacity);
/* Permutation games only: checks the tracking-matrix permanent against the
 * answer-set size after each round; *passed is set, lines go to `line`.
 * Other games yield CMM_INVALID_CONFIGURATION. */
CMM_API cmm_status cmm_game_audit(const cmm_game* game, int* passed, cmm_line_callback line,
                                  void* user);
CMM_API void cmm_game_destroy(cmm_game* game);

/* ---- strategies -------------------------------------------------------- */

typedef struct cmm_simulation_config {
  const char* strategy; /* "constant", "block_scan", "lemma3" or "optimal" */
  int exclusion_position; /* lemma3: 1-based */
  int exclusion_code;
  const char* opponent; /* "honest", "greedy" or "max-class" */
  int round_cap;        /* 0: default */
  cmm_solver_options solver;
} cmm_simulation_config;

typedef struct cmm_simulation_result {
  int max_rounds;
  uint64_t games;
  char worst_answer[CMM_CODE_TEXT]; /* honest opponent only */
} cmm_simulation_result;

/* `trace` receives the witness game, one formatted line per round. */
CMM_API cmm_status cmm_simulate(int k, int n, const char* mode,
                                const cmm_simulation_config* config,
                                cmm_simulation_result* out, cmm_line_callback trace, void* user);

/* ---- verification ------------------------------------------------------ */

typedef struct cmm_verify_config {
  const char* scope; /* rules, lemma1, lemma2, props, theorem1, theorem2,
                        theorem3, table, strategies, toggles, all */
  int max_n;         /* 0: scope default */
  const int* ks;     /* may be NULL */
  size_t ks_count;
  int trials;        /* 0: scope default */
  const char* tier;  /* "fast", "slow" or "extended"; NULL: fast */
  uint64_t seed;     /* 0: default */
  cmm_solver_options solver;
} cmm_verify_config;

/* Streams one line per check and a final PASS/FAIL line. */
CMM_API cmm_status cmm_verify(const cmm_verify_config* config, int* passed,
                              cmm_line_callback line, void* user);

/* ---- service ----------------------------------------------------------- */

typedef struct cmm_server cmm_server;

typedef struct cmm_server_config {
  const char* host;          /* NULL: 127.0.0.1 */
  int port;                  /* 0: any free port */
  uint64_t idle_ttl_s;       /* 0: default */
  uint64_t max_sessions;     /* 0: default */
  const char* snapshot_path; /* NULL: no snapshot */
} cmm_server_config;

CMM_API cmm_status cmm_server_start(const cmm_server_config* config, cmm_server** out,
                                    int* bound_port);
/* Stops serving and writes the snapshot if configured. */
CMM_API cmm_status cmm_server_stop(cmm_server* server);
CMM_API void cmm_server_destroy(cmm_server* server);

#ifdef __cplusplus
}
#endif

#endif /* CLEARMM_CLEARMM_H */
