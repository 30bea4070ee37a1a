/* Public C interface for the SQPC simulator library.
 *
 * Conventions:
 *   - every function returns sqpc_status unless noted; inspect sqpc_last_error()
 *     for a message after a failure
 *   - strings returned through char** are heap-allocated; release them with
 *     sqpc_string_free
 *   - handles are opaque; destroy them with the matching *_free function
 */
#ifndef SQPC_H
#define SQPC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqpc_status {
    SQPC_OK = 0,
    SQPC_ERROR_INVALID_ARGUMENT = 1,
    SQPC_ERROR_PARSE = 2,
    SQPC_ERROR_IO = 3,
    SQPC_ERROR_INTERNAL = 4
} sqpc_status;

typedef enum sqpc_outcome {
    SQPC_OUTCOME_COMPLETED = 0,
    SQPC_OUTCOME_ABORTED_EAVESDROP = 1,
    SQPC_OUTCOME_ABORTED_INSUFFICIENT = 2
} sqpc_outcome;

typedef struct sqpc_session sqpc_session;
typedef struct sqpc_transcript sqpc_transcript;
typedef struct sqpc_attack sqpc_attack;
typedef struct sqpc_campaign sqpc_campaign;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* sqpc_version(void);

/* Message for the most recent failure on this thread. Static storage; do not free. */
const char* sqpc_last_error(void);

void sqpc_string_free(char* s);

/* ---- session configuration and execution ---- */

/* Creates a session with defaults d=3, n=1, delta=0.25, threshold=0, seed=0. */
sqpc_status sqpc_session_new(sqpc_session** out);
void sqpc_session_free(sqpc_session* s);

sqpc_status sqpc_session_set_dimension(sqpc_session* s, int d);
sqpc_status sqpc_session_set_digits(sqpc_session* s, int n);
sqpc_status sqpc_session_set_delta(sqpc_session* s, double delta);
sqpc_status sqpc_session_set_threshold(sqpc_session* s, double threshold);
sqpc_status sqpc_session_set_seed(sqpc_session* s, uint64_t seed);

/* Secrets are length-n arrays of digits in [0, (d-1)/2]; the key has digits in [0, d-1]. */
sqpc_status sqpc_session_set_secrets(sqpc_session* s, const int* x, const int* y, int len);
sqpc_status sqpc_session_set_key(sqpc_session* s, const int* key, int len);
/* Alternative to an explicit key: every key digit is drawn from the seed with
 * the given parity (odd != 0 forces odd digits). Overrides a previous key. */
sqpc_status sqpc_session_set_key_parity(sqpc_session* s, int odd);

/* Runs one protocol session, optionally under an attack on the first
 * participant's channel (pass NULL for honest channels). */
sqpc_status sqpc_session_run(sqpc_session* s, const sqpc_attack* attack,
                             sqpc_transcript** out);

/* ---- transcripts ---- */

void sqpc_transcript_free(sqpc_transcript* t);
sqpc_status sqpc_transcript_outcome(const sqpc_transcript* t, sqpc_outcome* out);
/* Per-digit comparison results (-1, 0, +1), length n. Fails unless completed. */
sqpc_status sqpc_transcript_results(const sqpc_transcript* t, int* out, int len);
sqpc_status sqpc_transcript_to_text(const sqpc_transcript* t, char** out);
sqpc_status sqpc_transcript_from_text(const char* text, sqpc_transcript** out);
sqpc_status sqpc_transcript_summary(const sqpc_transcript* t, char** out);
/* party is one of "tp", "alice", "bob", "eve". */
sqpc_status sqpc_transcript_party_view(const sqpc_transcript* t, const char* party,
                                       char** out);
/* Privacy audit of a completed transcript, as JSON. */
sqpc_status sqpc_transcript_audit(const sqpc_transcript* t, char** out);

/* ---- attacks ---- */

/* name: "honest", "intercept-resend", "measure-resend-forward",
 * "measure-resend-return", "entangle-measure" (built-in probe preset). */
sqpc_status sqpc_attack_preset(const char* name, int d, sqpc_attack** out);
sqpc_status sqpc_attack_parse(const char* text, sqpc_attack** out);
sqpc_status sqpc_attack_load(const char* path, sqpc_attack** out);
void sqpc_attack_free(sqpc_attack* a);
sqpc_status sqpc_attack_describe(const sqpc_attack* a, char** out);
/* Exact per-class error rates, leakage and guess accuracy, as JSON. */
sqpc_status sqpc_attack_profile_json(const sqpc_attack* a, int d, char** out);
/* Structural zero-error check for entangling attacks, as JSON.
 * passes (if non-NULL) receives 1 or 0. */
sqpc_status sqpc_attack_verify_json(const sqpc_attack* a, double tolerance, char** out,
                                    int* passes);

/* ---- campaigns ---- */

/* Runs `trials` independent sessions of `s` under `attack` across `jobs`
 * worker threads (jobs <= 0 picks the hardware count). Results do not
 * depend on jobs. */
sqpc_status sqpc_campaign_run(const sqpc_session* s, const sqpc_attack* attack,
                              int trials, int jobs, sqpc_campaign** out);
void sqpc_campaign_free(sqpc_campaign* c);
sqpc_status sqpc_campaign_to_json(const sqpc_campaign* c, char** out);
sqpc_status sqpc_campaign_to_csv(const sqpc_campaign* c, char** out);

/* ---- closed-form efficiency ---- */

/* Qubit-equivalent communication efficiency for an n-digit comparison. */
sqpc_status sqpc_efficiency(int n, double delta, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SQPC_H */
