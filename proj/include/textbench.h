/* Apache License, Version 2.0, refer to LICENSE.txt
 *
 * Public C interface of the textbench shared library. All functions are
 * thread-compatible: handles must not be shared between threads without
 * external synchronization, but distinct handles are independent.
 *
 * Functions returning int use the TB_* status codes below; on any failure
 * tb_last_error() returns a thread-local description. Functions returning
 * pointers return NULL on failure. Strings returned as char* are owned by
 * the caller and must be released with tb_string_free().
 */
#ifndef TEXTBENCH_H
#define TEXTBENCH_H

#ifdef __cplusplus
extern "C" {
#endif

#define TB_OK 0
/* Some grid cells failed; the result handle is still valid. */
#define TB_ERR_CELLS_FAILED 2
/* Configuration or dataset error before any cell ran. */
#define TB_ERR_SETUP 3
/* File system failure. */
#define TB_ERR_IO 4
/* Invalid argument (null handle, unknown key, bad value). */
#define TB_ERR_INVALID 5

typedef struct tb_config tb_config;
typedef struct tb_grid_result tb_grid_result;

const char* tb_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* tb_last_error(void);

void tb_string_free(char* s);

/* ---- configuration ---- */

tb_config* tb_config_create(void);

/* Flat key=value file or flat JSON object. NULL on error. */
tb_config* tb_config_load(const char* path);

int tb_config_set(tb_config* config, const char* key, const char* value);

/* NULL for unknown keys. */
char* tb_config_get(const tb_config* config, const char* key);

/* All known keys, newline-separated. */
char* tb_config_keys(void);

char* tb_config_to_json(const tb_config* config);

void tb_config_destroy(tb_config* config);

/* ---- grid runs ---- */

/* Runs the configured grid. Returns TB_OK, TB_ERR_CELLS_FAILED (result
 * still produced) or TB_ERR_SETUP (no result). */
int tb_run_grid(const tb_config* config, tb_grid_result** out_result);

tb_grid_result* tb_grid_result_load(const char* path);
int tb_grid_result_save(const tb_grid_result* result, const char* path);

int tb_grid_result_cell_count(const tb_grid_result* result);
int tb_grid_result_failed_count(const tb_grid_result* result);

/* Human-readable result tables. */
char* tb_grid_result_summary(const tb_grid_result* result);

/* formats: comma-separated subset of "csv,markdown,json". */
int tb_emit_reports(const tb_grid_result* result, const char* formats,
                    const char* out_dir);

/* Feature-scheme comparison; as_json selects JSON over plain text. */
char* tb_compare_features(const tb_grid_result* result, int as_json);

void tb_grid_result_destroy(tb_grid_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TEXTBENCH_H */
