#ifndef MCPLAB_H
#define MCPLAB_H

/* C interface to the mcplab verification library.
 *
 * Every fallible call returns an mcplab_status; on failure the message is
 * available from mcplab_last_error() on the same thread until the next call.
 * Objects returned through out-parameters are owned by the caller and must be
 * released with the matching *_destroy function. Strings returned by report
 * accessors stay valid until the report is destroyed. */

#include <stdint.h>

#if defined(_WIN32)
#  if defined(MCPLAB_BUILDING_LIBRARY)
#    define MCPLAB_API __declspec(dllexport)
#  else
#    define MCPLAB_API __declspec(dllimport)
#  endif
#else
#  define MCPLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcplab_status {
  MCPLAB_OK = 0,
  MCPLAB_ERR_INVALID_ARGUMENT = 1, /* precondition on an argument violated */
  MCPLAB_ERR_MODEL = 2,            /* model failed validation */
  MCPLAB_ERR_SINGULAR = 3,         /* closed form evaluated at a pole */
  MCPLAB_ERR_REGIME = 4,           /* outside |c| < pi or similar */
  MCPLAB_ERR_DEGENERATE = 5,       /* vanishing horizontal velocity */
  MCPLAB_ERR_INTEGRATION = 6,      /* ODE integration failed */
  MCPLAB_ERR_NULL = 7,             /* required pointer was NULL */
  MCPLAB_ERR_INTERNAL = 99
} mcplab_status;

typedef struct mcplab_model mcplab_model;
typedef struct mcplab_report mcplab_report;

/* Grid lo..hi with count points (count == 1 means {lo}). */
typedef struct mcplab_range {
  double lo;
  double hi;
  int count;
} mcplab_range;

typedef enum mcplab_set_kind { MCPLAB_SET_BALL = 0, MCPLAB_SET_CYLINDER = 1 } mcplab_set_kind;

/* Velocity set for Monte Carlo contraction. Ball: |w| <= radius.
 * Cylinder: |w_H| <= max_horizontal and |<w, V>| <= max_vertical. */
typedef struct mcplab_velocity_set {
  mcplab_set_kind kind;
  double radius;
  double max_horizontal;
  double max_vertical;
} mcplab_velocity_set;

typedef struct mcplab_mc_options {
  int samples;
  uint64_t seed;
  int bootstrap;
  double ode_tol;
  int threads;          /* <= 0: MCPLAB_THREADS, then hardware count */
  int quadrature_nodes; /* 0 skips the quadrature cross-check */
} mcplab_mc_options;

MCPLAB_API const char* mcplab_version(void);
MCPLAB_API const char* mcplab_last_error(void);
MCPLAB_API const char* mcplab_status_string(mcplab_status status);

/* "lo:hi:count" or a single number. */
MCPLAB_API mcplab_status mcplab_parse_range(const char* text, mcplab_range* out);
MCPLAB_API mcplab_mc_options mcplab_mc_default_options(void);

/* Models */
MCPLAB_API mcplab_status mcplab_model_heisenberg(int n, double eps, mcplab_model** out);
MCPLAB_API mcplab_status mcplab_model_from_json(const char* json_text, mcplab_model** out);
MCPLAB_API int mcplab_model_dim(const mcplab_model* model);
MCPLAB_API void mcplab_model_destroy(mcplab_model* model);

/* Verification suites; each produces a report. */
MCPLAB_API mcplab_status mcplab_verify_curvature(const mcplab_model* model, double tol,
                                                 int samples, uint64_t seed, mcplab_report** out);
MCPLAB_API mcplab_status mcplab_riccati_compare(double b, double c, int n, mcplab_range t,
                                                double rel_tol, mcplab_report** out);
MCPLAB_API mcplab_status mcplab_conjugate_report(double b, double c, int n, mcplab_report** out);
MCPLAB_API mcplab_status mcplab_mcp_scan(int n, mcplab_range b, mcplab_range c, mcplab_range t,
                                         double tol, int threads, mcplab_report** out);
MCPLAB_API mcplab_status mcplab_sharpness(int n, mcplab_range t, double tol, int threads,
                                          mcplab_report** out);
MCPLAB_API mcplab_status mcplab_contract(int n, double eps, const double* x0,
                                         const mcplab_velocity_set* set, double t,
                                         const mcplab_mc_options* options, mcplab_report** out);
MCPLAB_API mcplab_status mcplab_density_profile(double b, double c, int n, mcplab_range t,
                                                double tol, mcplab_report** out);
/* pos may be NULL (origin); pos and vel have 2n+1 entries. */
MCPLAB_API mcplab_status mcplab_geodesic(int n, double eps, const double* pos, const double* vel,
                                         double T, double tol, int samples, mcplab_report** out);

/* Scalar queries */
/* *found is set to 1 and *t_star to the first conjugate time in (0, 1], or *found = 0. */
MCPLAB_API mcplab_status mcplab_conjugate_time(double b, double c, int* found, double* t_star);
MCPLAB_API mcplab_status mcplab_density(double b, double c, int n, double t, double* out);

/* Reports */
MCPLAB_API int mcplab_report_passed(const mcplab_report* report);
MCPLAB_API const char* mcplab_report_command(const mcplab_report* report);
MCPLAB_API const char* mcplab_report_json(mcplab_report* report);
/* NULL when the report has no table. */
MCPLAB_API const char* mcplab_report_csv(mcplab_report* report);
MCPLAB_API const char* mcplab_report_summary(const mcplab_report* report);
MCPLAB_API void mcplab_report_destroy(mcplab_report* report);

#ifdef __cplusplus
}
#endif

#endif
