/* C interface of the skewfold shared library.
 *
 * All objects are opaque handles; every call that can fail returns an
 * sf_status, and sf_last_error() describes the most recent failure on the
 * calling thread.  Strings returned by the library stay valid until the
 * owning handle is freed.
 */
#ifndef SKEWFOLD_H
#define SKEWFOLD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
    SF_OK = 0,
    SF_ERR_VERIFY = 1,  /* scenario ran, one or more checks failed */
    SF_ERR_CONFIG = 2,  /* bad configuration or parameters */
    SF_ERR_RUNTIME = 3, /* I/O or internal failure */
} sf_status;

typedef struct sf_config sf_config;
typedef struct sf_report sf_report;

/* --- configuration ------------------------------------------------------ */

sf_status sf_config_from_file(const char* path, sf_config** out);
sf_status sf_config_from_json(const char* json_text, sf_config** out);
void sf_config_free(sf_config* config);

/* Overrides applied on top of the loaded file. */
sf_status sf_config_set_scenario(sf_config* config, const char* scenario);
sf_status sf_config_set_seed(sf_config* config, uint64_t master_seed);
sf_status sf_config_set_out_dir(sf_config* config, const char* out_dir);
sf_status sf_config_set_workers(sf_config* config, size_t n_workers);

/* --- execution ---------------------------------------------------------- */

/* Runs the configured scenario.  Returns SF_OK when every check passed and
 * SF_ERR_VERIFY when the run completed but a check failed; in both cases
 * *out is a valid report. */
sf_status sf_run(const sf_config* config, sf_report** out);

int sf_report_passed(const sf_report* report);
const char* sf_report_json(const sf_report* report);
size_t sf_report_check_count(const sf_report* report);
void sf_report_free(sf_report* report);

/* --- introspection ------------------------------------------------------ */

/* JSON array of {name, description} objects, owned by the library. */
const char* sf_list_scenarios(void);

/* Message for the last failing call on this thread ("" if none). */
const char* sf_last_error(void);

const char* sf_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SKEWFOLD_H */
