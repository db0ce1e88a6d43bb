#ifndef BCN_H
#define BCN_H

/* C interface to the Boolean-network analysis library.
 *
 * All functions return 0 on success, 1 for a negative verdict or infeasible
 * synthesis, and 2 for input/usage errors. On error, bcn_last_error() holds
 * a message for the calling thread. Strings returned through out-parameters
 * are heap-allocated; release them with bcn_string_free(). */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bcn_network bcn_network;

/* Load a network document (JSON) from a file or from memory.
 * Returns 0 and sets *out on success; 2 on failure. */
int bcn_network_load_file(const char* path, bcn_network** out);
int bcn_network_load_string(const char* text, bcn_network** out);
void bcn_network_free(bcn_network* net);

/* State dimensions of a loaded network. Any pointer may be NULL. */
void bcn_network_dims(const bcn_network* net, int* n, int* m, int* d, int* t, int* p, int* s);

/* Run a named command ("info", "attractors", "simulate", "equiv", "reach",
 * "dd-check", "dd-synth", "stabilize", "ifd-synth", "ddifd-synth", "verify",
 * "observe", "count", "export-dot") with a JSON options document (NULL or ""
 * for defaults). On return *report_json (if non-NULL) holds the JSON report;
 * the return value follows the 0/1/2 convention above. */
int bcn_run(const bcn_network* net, const char* command, const char* options_json,
            char** report_json);

/* Render a JSON report as human-readable text. Returns NULL on bad input. */
char* bcn_render_text(const char* report_json);

/* Message for the last failing call on this thread; empty string if none. */
const char* bcn_last_error(void);

void bcn_string_free(char* s);

const char* bcn_version(void);

#ifdef __cplusplus
}
#endif

#endif /* BCN_H */
