/* C interface to the variational quantum chemistry toolkit: opaque handles,
 * integer status codes, thread-local error messages. */
#ifndef VQX_H
#define VQX_H

#ifdef __cplusplus
extern "C" {
#endif

#define VQX_OK 0
#define VQX_ERR_INVALID_ARGUMENT 1
#define VQX_ERR_RUNTIME 2

/* Message for the calling thread's most recent failure; empty if none. */
const char* vqx_last_error(void);

/* Releases strings returned through out-parameters. */
void vqx_string_free(char* s);

/* Parses and validates a JSON run configuration, fills in every default, and
 * returns the resolved configuration as newly allocated JSON text. */
int vqx_resolve_config(const char* config_json, char** out_json);

/* Runs a dissociation sweep and writes CSV tables plus SVG plots to the
 * configured output directory, or to out_dir when it is non-NULL. */
int vqx_run_json(const char* config_json, const char* out_dir);

/* Re-renders SVG plots from tables previously written to results_dir. */
int vqx_plot(const char* results_dir);

/* Exact-diagonalization reference spectrum of one geometry. */
typedef struct vqx_spectrum vqx_spectrum;

/* molecule: "H2" or "HeH"; encoding: "jw" or "bk". */
int vqx_spectrum_create(const char* molecule, double r_angstrom,
                        const char* encoding, vqx_spectrum** out);
void vqx_spectrum_destroy(vqx_spectrum* s);
int vqx_spectrum_size(const vqx_spectrum* s, int* out_size);
int vqx_spectrum_level(const vqx_spectrum* s, int index, double* out_energy,
                       double* out_n, double* out_sz, double* out_s_squared);

/* The same data as CSV text: level,energy,n,sz,s_squared. */
int vqx_spectrum_csv(const char* molecule, double r_angstrom,
                     const char* encoding, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* VQX_H */
