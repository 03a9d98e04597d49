/*
 * pho.h - C interface to the pseudoharmonic-oscillator spectrum library.
 *
 * Objects are opaque handles created by *_create / *_parse_* functions and
 * released by the matching *_destroy. Every fallible call returns a
 * pho_status; on failure a human-readable message for the calling thread is
 * available from pho_last_error_message() until the next failing call.
 *
 * Energies are in units of the dissociation energy De unless a pho_units
 * conversion is requested. Lengths are in units of the equilibrium distance re.
 */
#ifndef PHO_PHO_H
#define PHO_PHO_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PHO_BUILDING_LIBRARY)
#    define PHO_API __declspec(dllexport)
#  else
#    define PHO_API __declspec(dllimport)
#  endif
#else
#  define PHO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pho_status {
  PHO_OK = 0,
  PHO_ERROR_INVALID_ARGUMENT = 1,
  PHO_ERROR_PARSE = 2,
  PHO_ERROR_IO = 3,
  PHO_ERROR_NOT_FOUND = 4,
  PHO_ERROR_DOMAIN = 5,
  PHO_ERROR_SINGULAR_MOMENT = 6,
  PHO_ERROR_EXPANSION_DOMAIN = 7,
  PHO_ERROR_EVALUATION = 8,
  PHO_ERROR_ORACLE = 9,
  PHO_ERROR_BUFFER_TOO_SMALL = 10,
  PHO_ERROR_INTERNAL = 11
} pho_status;

typedef enum pho_units { PHO_UNITS_DE = 0, PHO_UNITS_EV = 1, PHO_UNITS_WAVENUMBER = 2 } pho_units;

typedef enum pho_format { PHO_FORMAT_CSV = 0, PHO_FORMAT_JSON = 1 } pho_format;

typedef enum pho_expansion_order {
  PHO_EXPANSION_COMPLETE = 0, /* all terms through 1/gamma^3 */
  PHO_EXPANSION_ROTATING = 1  /* the five labelled terms only */
} pho_expansion_order;

typedef enum pho_deformation_kind {
  PHO_DEFORMATION_EPSILON = 0,
  PHO_DEFORMATION_LMIN = 1,
  PHO_DEFORMATION_BETA_SI = 2
} pho_deformation_kind;

typedef struct pho_model pho_model;
typedef struct pho_spectrum pho_spectrum;
typedef struct pho_catalog pho_catalog;

typedef struct pho_breakdown {
  double harmonic;
  double rotational;
  double dissociation_shift;
  double anharmonic;
  double coupling;
  double remainder;
} pho_breakdown;

typedef struct pho_line {
  int n;
  int l;
  double e0;
  double delta_e;
  double total;
  pho_breakdown breakdown;
} pho_line;

typedef struct pho_model_info {
  double gamma;
  double epsilon;
  double hbar_omega;  /* in De */
  int has_si;         /* nonzero when built from physical parameters */
  double De_joule;
  double re_meter;
  double mu_kg;
  double beta_si;
  double omega_rad_s;
  double minimal_length_m;
} pho_model_info;

typedef struct pho_record {
  const char* name; /* owned by the catalog */
  double mu_amu;
  double De_eV;
  double re_angstrom;
  pho_deformation_kind deformation_kind;
  double deformation_value;
} pho_record;

typedef struct pho_verify_options {
  int levels;
  double resolution;
  double max_spacing;
} pho_verify_options;

typedef struct pho_verify_report {
  double gamma;
  double epsilon;
  int n;
  int l;
  size_t grid_points;
  double grid_spacing;
  int levels;
  double analytic_e0;
  double oracle_e0;
  double oracle_e0_error;
  double closed_form;
  double oracle_moments;
  double exact_difference;
  double exact_difference_half;
  double residual;
  double residual_half;
  double ratio;
  double dev_closed_moments;
  double dev_closed_exact;
  double dev_moments_exact;
  int consistency_ok;
  int scaling_ok;
  int passed;
} pho_verify_report;

PHO_API const char* pho_version(void);
PHO_API const char* pho_status_name(pho_status status);
PHO_API const char* pho_last_error_message(void);

/* ---- models ------------------------------------------------------------ */

/* Reduced model: energies in De, no physical units attached. */
PHO_API pho_status pho_model_create(double gamma, double epsilon, pho_model** out);
/* Physical model in SI units; hbar is CODATA 2018. */
PHO_API pho_status pho_model_create_molecular(double mu_kg, double De_joule, double re_meter, double beta_si,
                                              pho_model** out);
PHO_API void pho_model_destroy(pho_model* model);

PHO_API pho_status pho_model_get_info(const pho_model* model, pho_model_info* out);
PHO_API pho_status pho_model_lambda(const pho_model* model, int l, double* out);
PHO_API pho_status pho_unperturbed_energy(const pho_model* model, int n, int l, double* out);
PHO_API pho_status pho_matrix_element(const pho_model* model, int n, int l, int q, double* out);
PHO_API pho_status pho_correction(const pho_model* model, int n, int l, double* out);
PHO_API pho_status pho_energy_expansion(const pho_model* model, int n, int l, pho_expansion_order order,
                                        double* energy, pho_breakdown* breakdown, int* low_gamma);
/* Converts an energy in De to `units`; eV and cm^-1 need a physical model. */
PHO_API pho_status pho_energy_to_units(const pho_model* model, double value_De, pho_units units, double* out);

PHO_API pho_status pho_minimal_length(double beta, double beta_prime, double hbar, double* out);

/* ---- spectra --------------------------------------------------------------- */

PHO_API pho_status pho_spectrum_create(const pho_model* model, int n_max, int l_max, pho_spectrum** out);
PHO_API void pho_spectrum_destroy(pho_spectrum* spectrum);
PHO_API size_t pho_spectrum_size(const pho_spectrum* spectrum);
PHO_API pho_status pho_spectrum_line_at(const pho_spectrum* spectrum, size_t index, pho_line* out);

/*
 * Renders the spectrum as CSV or JSON into buf (NUL-terminated). `needed`
 * receives the length including the terminator; pass buf = NULL, cap = 0 to
 * query it. `name` labels the JSON object and may be NULL.
 */
PHO_API pho_status pho_spectrum_render(const pho_spectrum* spectrum, pho_units units, pho_format format,
                                       const char* name, char* buf, size_t cap, size_t* needed);

/* ---- catalogs -------------------------------------------------------------- */

PHO_API pho_status pho_catalog_parse_file(const char* path, pho_catalog** out);
PHO_API pho_status pho_catalog_parse_string(const char* text, pho_catalog** out);
PHO_API void pho_catalog_destroy(pho_catalog* catalog);
PHO_API size_t pho_catalog_size(const pho_catalog* catalog);
PHO_API pho_status pho_catalog_record_at(const pho_catalog* catalog, size_t index, pho_record* out);
PHO_API pho_status pho_catalog_find(const pho_catalog* catalog, const char* name, size_t* index);
PHO_API pho_status pho_catalog_model(const pho_catalog* catalog, size_t index, pho_model** out);

/* ---- verification ---------------------------------------------------------- */

PHO_API void pho_verify_options_default(pho_verify_options* options);
PHO_API pho_status pho_verify(double gamma, double epsilon, int n, int l, const pho_verify_options* options,
                              pho_verify_report* out);

#ifdef __cplusplus
}
#endif

#endif /* PHO_PHO_H */
