#ifndef RAED_H
#define RAED_H

/* C interface to the allocation library. Every object crossing this
 * boundary is an opaque handle; every function reports failure through the
 * status code and leaves details in raed_last_error() (thread local).
 * Strings handed out through char** parameters must be released with
 * raed_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum raed_status {
  RAED_OK = 0,
  RAED_ERR_INVALID_ARGUMENT = 1, /* bad input, shape mismatch, unknown name */
  RAED_ERR_LIMIT = 2,            /* exact-solver node budget exhausted */
  RAED_ERR_INTERNAL = 3,
  RAED_ERR_NOMEM = 4
} raed_status;

typedef struct raed_instance raed_instance;
typedef struct raed_result raed_result;

const char* raed_version(void);

/* Message of the calling thread's most recent failure, never NULL. */
const char* raed_last_error(void);

void raed_string_free(char* s);

/* spec_json: generation parameters and dimensions, e.g.
 *   {"num_users": 10, "num_slots": 10, "seed": 7}
 * Unknown keys are rejected. */
raed_status raed_instance_generate(const char* spec_json, raed_instance** out);
raed_status raed_instance_from_json(const char* text, raed_instance** out);
raed_status raed_instance_to_json(const raed_instance* inst, char** out);
void raed_instance_free(raed_instance* inst);

/* algorithm: one of scsb1, scsb2, scmb, mcsb, mcmb, oracle, moore.
 * energy_per_slot_mode: 0 charges one unit per active (slot, channel)
 * cell, nonzero charges one unit per active slot of a station. */
raed_status raed_run(const raed_instance* inst, const char* algorithm,
                     int energy_per_slot_mode, raed_result** out);

/* Exact optimum by branch and bound. max_nodes <= 0 keeps the default
 * budget; exhausting it yields RAED_ERR_LIMIT and no result. */
raed_status raed_solve_exact(const raed_instance* inst, long long max_nodes,
                             raed_result** out);

raed_status raed_result_served(const raed_result* res, int* out);
raed_status raed_result_to_json(const raed_result* res, char** out);
/* Fixed-width text strips of each station's grid. */
raed_status raed_result_render(const raed_result* res, char** out);
void raed_result_free(raed_result* res);

/* Text LP formulation of the instance (maximize served users). */
raed_status raed_export_ilp(const raed_instance* inst, char** out);

/* Runs a sweep described by config_json and returns the CSV. Honors the
 * RAED_WORKERS environment variable for the worker count. */
raed_status raed_bench_run(const char* config_json, char** csv_out);

/* Renders benchmark CSV to an SVG line chart. warning_out may be NULL;
 * when provided it receives a message for degenerate inputs (no data
 * rows) or NULL if there is nothing to report. */
raed_status raed_plot_csv(const char* csv_text, char** svg_out, char** warning_out);

#ifdef __cplusplus
}
#endif

#endif /* RAED_H */
