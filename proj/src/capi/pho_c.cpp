#include "pho/pho.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "pho/catalog.hpp"
#include "pho/core.hpp"
#include "pho/errors.hpp"
#include "pho/table.hpp"
#include "pho/verify.hpp"

struct pho_model {
  pho::PhoModel model;
  bool has_si = false;
  pho::MolecularParams params;
};

struct pho_spectrum {
  std::vector<pho::SpectrumLine> lines;
  bool has_si = false;
  double De_joule = 1.0;
};

struct pho_catalog {
  std::vector<pho::io::CatalogRecord> records;
};

namespace {

thread_local std::string g_last_error;

pho_status fail(pho_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
pho_status guarded(F&& body) {
  try {
    body();
    return PHO_OK;
  } catch (const pho::ParseError& e) {
    return fail(PHO_ERROR_PARSE, e.what());
  } catch (const pho::SingularMomentError& e) {
    return fail(PHO_ERROR_SINGULAR_MOMENT, e.what());
  } catch (const pho::ExpansionDomainError& e) {
    return fail(PHO_ERROR_EXPANSION_DOMAIN, e.what());
  } catch (const pho::DomainError& e) {
    return fail(PHO_ERROR_DOMAIN, e.what());
  } catch (const pho::EvaluationError& e) {
    return fail(PHO_ERROR_EVALUATION, e.what());
  } catch (const pho::SolverError& e) {
    return fail(PHO_ERROR_ORACLE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PHO_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(PHO_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PHO_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PHO_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(PHO_ERROR_INTERNAL, "unknown exception");
  }
}

#define PHO_REQUIRE(cond, what) \
  if (!(cond)) return fail(PHO_ERROR_INVALID_ARGUMENT, what)

pho_breakdown to_c(const pho::EnergyBreakdown& b) {
  return {b.harmonic, b.rotational, b.dissociation_shift, b.anharmonic, b.coupling, b.remainder};
}

pho::io::EnergyUnit to_unit(pho_units u) {
  switch (u) {
    case PHO_UNITS_DE: return pho::io::EnergyUnit::De;
    case PHO_UNITS_EV: return pho::io::EnergyUnit::ElectronVolt;
    case PHO_UNITS_WAVENUMBER: return pho::io::EnergyUnit::Wavenumber;
  }
  throw std::invalid_argument("unknown unit code");
}

pho_status new_model(pho_model** out, pho_model&& value) {
  pho_model* m = new (std::nothrow) pho_model(std::move(value));
  if (!m) return fail(PHO_ERROR_INTERNAL, "out of memory");
  *out = m;
  return PHO_OK;
}

}  // namespace

extern "C" {

const char* pho_version(void) { return "0.1.0"; }

const char* pho_status_name(pho_status status) {
  switch (status) {
    case PHO_OK: return "ok";
    case PHO_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case PHO_ERROR_PARSE: return "parse error";
    case PHO_ERROR_IO: return "I/O error";
    case PHO_ERROR_NOT_FOUND: return "not found";
    case PHO_ERROR_DOMAIN: return "domain error";
    case PHO_ERROR_SINGULAR_MOMENT: return "singular moment";
    case PHO_ERROR_EXPANSION_DOMAIN: return "expansion domain error";
    case PHO_ERROR_EVALUATION: return "evaluation error";
    case PHO_ERROR_ORACLE: return "oracle failure";
    case PHO_ERROR_BUFFER_TOO_SMALL: return "buffer too small";
    case PHO_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pho_last_error_message(void) { return g_last_error.c_str(); }

pho_status pho_model_create(double gamma, double epsilon, pho_model** out) {
  PHO_REQUIRE(out, "out is NULL");
  *out = nullptr;
  pho_status st = PHO_OK;
  const pho_status g = guarded([&] { st = new_model(out, pho_model{pho::PhoModel(gamma, epsilon), false, {}}); });
  return g != PHO_OK ? g : st;
}

pho_status pho_model_create_molecular(double mu_kg, double De_joule, double re_meter, double beta_si,
                                      pho_model** out) {
  PHO_REQUIRE(out, "out is NULL");
  *out = nullptr;
  pho_status st = PHO_OK;
  const pho_status g = guarded([&] {
    const pho::MolecularParams p{mu_kg, De_joule, re_meter, beta_si};
    st = new_model(out, pho_model{pho::model_of(p, pho::io::codata2018().hbar), true, p});
  });
  return g != PHO_OK ? g : st;
}

void pho_model_destroy(pho_model* model) { delete model; }

pho_status pho_model_get_info(const pho_model* model, pho_model_info* out) {
  PHO_REQUIRE(model && out, "model or out is NULL");
  return guarded([&] {
    pho_model_info info{};
    info.gamma = model->model.gamma();
    info.epsilon = model->model.epsilon();
    info.hbar_omega = model->model.hbar_omega();
    info.has_si = model->has_si ? 1 : 0;
    if (model->has_si) {
      const auto& p = model->params;
      const double hbar = pho::io::codata2018().hbar;
      info.De_joule = p.De;
      info.re_meter = p.re;
      info.mu_kg = p.mu;
      info.beta_si = p.beta;
      info.omega_rad_s = pho::angular_frequency(p);
      info.minimal_length_m = pho::minimal_length(p.beta, 2.0 * p.beta, hbar);
    }
    *out = info;
  });
}

pho_status pho_model_lambda(const pho_model* model, int l, double* out) {
  PHO_REQUIRE(model && out, "model or out is NULL");
  return guarded([&] { *out = model->model.lambda(l); });
}

pho_status pho_unperturbed_energy(const pho_model* model, int n, int l, double* out) {
  PHO_REQUIRE(model && out, "model or out is NULL");
  return guarded([&] { *out = pho::unperturbed_energy(model->model, {n, l}); });
}

pho_status pho_matrix_element(const pho_model* model, int n, int l, int q, double* out) {
  PHO_REQUIRE(model && out, "model or out is NULL");
  return guarded([&] { *out = pho::matrix_element(model->model, {n, l}, q); });
}

pho_status pho_correction(const pho_model* model, int n, int l, double* out) {
  PHO_REQUIRE(model && out, "model or out is NULL");
  return guarded([&] { *out = pho::correction_pho(model->model, {n, l}); });
}

pho_status pho_energy_expansion(const pho_model* model, int n, int l, pho_expansion_order order, double* energy,
                                pho_breakdown* breakdown, int* low_gamma) {
  PHO_REQUIRE(model, "model is NULL");
  PHO_REQUIRE(order == PHO_EXPANSION_COMPLETE || order == PHO_EXPANSION_ROTATING, "unknown expansion order");
  return guarded([&] {
    const auto o = order == PHO_EXPANSION_COMPLETE ? pho::ExpansionOrder::Complete
                                                   : pho::ExpansionOrder::RotatingMolecule;
    const pho::Expansion e = pho::energy_expansion(model->model, {n, l}, o);
    if (energy) *energy = e.energy;
    if (breakdown) *breakdown = to_c(e.breakdown);
    if (low_gamma) *low_gamma = e.low_gamma ? 1 : 0;
  });
}

pho_status pho_energy_to_units(const pho_model* model, double value_De, pho_units units, double* out) {
  PHO_REQUIRE(model && out, "model or out is NULL");
  if (units != PHO_UNITS_DE && !model->has_si)
    return fail(PHO_ERROR_INVALID_ARGUMENT, "eV and cm-1 need a model built from physical parameters");
  return guarded([&] { *out = pho::io::energy_from_De(value_De, model->params.De, to_unit(units)); });
}

pho_status pho_minimal_length(double beta, double beta_prime, double hbar, double* out) {
  PHO_REQUIRE(out, "out is NULL");
  return guarded([&] { *out = pho::minimal_length(beta, beta_prime, hbar); });
}

pho_status pho_spectrum_create(const pho_model* model, int n_max, int l_max, pho_spectrum** out) {
  PHO_REQUIRE(model && out, "model or out is NULL");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<pho_spectrum>();
    s->lines = pho::full_spectrum(model->model, n_max, l_max);
    s->has_si = model->has_si;
    s->De_joule = model->has_si ? model->params.De : 1.0;
    *out = s.release();
  });
}

void pho_spectrum_destroy(pho_spectrum* spectrum) { delete spectrum; }

size_t pho_spectrum_size(const pho_spectrum* spectrum) { return spectrum ? spectrum->lines.size() : 0; }

pho_status pho_spectrum_line_at(const pho_spectrum* spectrum, size_t index, pho_line* out) {
  PHO_REQUIRE(spectrum && out, "spectrum or out is NULL");
  if (index >= spectrum->lines.size()) return fail(PHO_ERROR_INVALID_ARGUMENT, "line index out of range");
  const auto& s = spectrum->lines[index];
  *out = pho_line{s.qn.n, s.qn.l, s.e0, s.delta_e, s.total, to_c(s.breakdown)};
  return PHO_OK;
}

pho_status pho_spectrum_render(const pho_spectrum* spectrum, pho_units units, pho_format format, const char* name,
                               char* buf, size_t cap, size_t* needed) {
  PHO_REQUIRE(spectrum, "spectrum is NULL");
  PHO_REQUIRE(format == PHO_FORMAT_CSV || format == PHO_FORMAT_JSON, "unknown format");
  PHO_REQUIRE(buf || cap == 0, "buf is NULL with nonzero capacity");
  if (units != PHO_UNITS_DE && !spectrum->has_si)
    return fail(PHO_ERROR_INVALID_ARGUMENT, "eV and cm-1 need a model built from physical parameters");
  std::string text;
  const pho_status st = guarded([&] {
    const auto table = pho::io::make_table(spectrum->lines, to_unit(units), spectrum->De_joule);
    text = format == PHO_FORMAT_CSV ? pho::io::render_csv(table) : pho::io::render_json(table, name ? name : "");
  });
  if (st != PHO_OK) return st;
  if (needed) *needed = text.size() + 1;
  if (cap < text.size() + 1) {
    if (buf && cap > 0) buf[0] = '\0';
    return fail(PHO_ERROR_BUFFER_TOO_SMALL, "render buffer needs " + std::to_string(text.size() + 1) + " bytes");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return PHO_OK;
}

pho_status pho_catalog_parse_file(const char* path, pho_catalog** out) {
  PHO_REQUIRE(path && out, "path or out is NULL");
  *out = nullptr;
  std::ifstream in(path);
  if (!in) return fail(PHO_ERROR_IO, std::string("cannot open catalog '") + path + "'");
  return guarded([&] {
    auto c = std::make_unique<pho_catalog>();
    c->records = pho::io::parse_catalog(in);
    *out = c.release();
  });
}

pho_status pho_catalog_parse_string(const char* text, pho_catalog** out) {
  PHO_REQUIRE(text && out, "text or out is NULL");
  *out = nullptr;
  return guarded([&] {
    auto c = std::make_unique<pho_catalog>();
    c->records = pho::io::parse_catalog_string(text);
    *out = c.release();
  });
}

void pho_catalog_destroy(pho_catalog* catalog) { delete catalog; }

size_t pho_catalog_size(const pho_catalog* catalog) { return catalog ? catalog->records.size() : 0; }

pho_status pho_catalog_record_at(const pho_catalog* catalog, size_t index, pho_record* out) {
  PHO_REQUIRE(catalog && out, "catalog or out is NULL");
  if (index >= catalog->records.size()) return fail(PHO_ERROR_INVALID_ARGUMENT, "record index out of range");
  const auto& r = catalog->records[index];
  pho_record rec{};
  rec.name = r.name.c_str();
  rec.mu_amu = r.mu_amu;
  rec.De_eV = r.De_eV;
  rec.re_angstrom = r.re_angstrom;
  switch (r.deformation.kind) {
    case pho::io::DeformationKind::Epsilon: rec.deformation_kind = PHO_DEFORMATION_EPSILON; break;
    case pho::io::DeformationKind::MinimalLength: rec.deformation_kind = PHO_DEFORMATION_LMIN; break;
    case pho::io::DeformationKind::BetaSi: rec.deformation_kind = PHO_DEFORMATION_BETA_SI; break;
  }
  rec.deformation_value = r.deformation.value;
  *out = rec;
  return PHO_OK;
}

pho_status pho_catalog_find(const pho_catalog* catalog, const char* name, size_t* index) {
  PHO_REQUIRE(catalog && name && index, "catalog, name or index is NULL");
  for (size_t i = 0; i < catalog->records.size(); ++i) {
    if (catalog->records[i].name == name) {
      *index = i;
      return PHO_OK;
    }
  }
  return fail(PHO_ERROR_NOT_FOUND, std::string("no molecule named '") + name + "'");
}

pho_status pho_catalog_model(const pho_catalog* catalog, size_t index, pho_model** out) {
  PHO_REQUIRE(catalog && out, "catalog or out is NULL");
  *out = nullptr;
  if (index >= catalog->records.size()) return fail(PHO_ERROR_INVALID_ARGUMENT, "record index out of range");
  pho_status st = PHO_OK;
  const pho_status g = guarded([&] {
    const auto& r = catalog->records[index];
    st = new_model(out, pho_model{pho::io::model_of_record(r), true, pho::io::convert_units(r)});
  });
  return g != PHO_OK ? g : st;
}

void pho_verify_options_default(pho_verify_options* options) {
  if (!options) return;
  const pho::VerifyOptions d;
  options->levels = d.levels;
  options->resolution = d.resolution;
  options->max_spacing = d.max_spacing;
}

pho_status pho_verify(double gamma, double epsilon, int n, int l, const pho_verify_options* options,
                      pho_verify_report* out) {
  PHO_REQUIRE(out, "out is NULL");
  pho::VerifyOptions o;
  if (options) {
    PHO_REQUIRE(options->levels >= 2 && options->levels <= 5, "levels must be in [2, 5]");
    PHO_REQUIRE(options->resolution > 0.0 && options->max_spacing > 0.0, "grid controls must be positive");
    o.levels = options->levels;
    o.resolution = options->resolution;
    o.max_spacing = options->max_spacing;
  }
  return guarded([&] {
    const pho::VerifyReport r = pho::verify_correction(gamma, epsilon, {n, l}, o);
    pho_verify_report c{};
    c.gamma = r.gamma;
    c.epsilon = r.epsilon;
    c.n = r.qn.n;
    c.l = r.qn.l;
    c.grid_points = r.grid_points;
    c.grid_spacing = r.grid_spacing;
    c.levels = r.levels;
    c.analytic_e0 = r.analytic_e0;
    c.oracle_e0 = r.oracle_e0;
    c.oracle_e0_error = r.oracle_e0_error;
    c.closed_form = r.closed_form;
    c.oracle_moments = r.oracle_moments;
    c.exact_difference = r.exact_difference;
    c.exact_difference_half = r.exact_difference_half;
    c.residual = r.residual;
    c.residual_half = r.residual_half;
    c.ratio = r.ratio;
    c.dev_closed_moments = r.dev_closed_moments;
    c.dev_closed_exact = r.dev_closed_exact;
    c.dev_moments_exact = r.dev_moments_exact;
    c.consistency_ok = r.consistency_ok;
    c.scaling_ok = r.scaling_ok;
    c.passed = r.passed;
    *out = c;
  });
}

}  // extern "C"
