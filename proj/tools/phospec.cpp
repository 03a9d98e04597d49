// phospec: batch front end over the pho C interface.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pho/pho.h"

namespace {

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kDomain = 3, kOracle = 4 };

int exit_code(pho_status st) {
  switch (st) {
    case PHO_OK: return kOk;
    case PHO_ERROR_INVALID_ARGUMENT:
    case PHO_ERROR_PARSE:
    case PHO_ERROR_IO:
    case PHO_ERROR_NOT_FOUND: return kInput;
    case PHO_ERROR_DOMAIN:
    case PHO_ERROR_SINGULAR_MOMENT:
    case PHO_ERROR_EXPANSION_DOMAIN: return kDomain;
    case PHO_ERROR_EVALUATION:
    case PHO_ERROR_ORACLE: return kOracle;
    default: return kInternal;
  }
}

struct Failure {
  int code;
  std::string message;
};

void check(pho_status st, const std::string& context) {
  if (st != PHO_OK)
    throw Failure{exit_code(st), context + ": " + pho_status_name(st) + ": " + pho_last_error_message()};
}

struct ModelDeleter {
  void operator()(pho_model* m) const { pho_model_destroy(m); }
};
struct SpectrumDeleter {
  void operator()(pho_spectrum* s) const { pho_spectrum_destroy(s); }
};
struct CatalogDeleter {
  void operator()(pho_catalog* c) const { pho_catalog_destroy(c); }
};
using ModelPtr = std::unique_ptr<pho_model, ModelDeleter>;
using SpectrumPtr = std::unique_ptr<pho_spectrum, SpectrumDeleter>;
using CatalogPtr = std::unique_ptr<pho_catalog, CatalogDeleter>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double rounded(double v) { return std::strtod(fmt(v).c_str(), nullptr); }

// ---- shared options ----------------------------------------------------------

struct Source {
  std::string catalog;
  std::vector<std::string> molecules;
  std::optional<double> gamma;
  std::optional<double> epsilon;
};

struct Output {
  std::string units = "De";
  std::string format = "csv";
  std::string out;
};

struct NamedModel {
  std::string name;
  ModelPtr model;
};

void add_source(CLI::App* cmd, Source& s) {
  auto* cat = cmd->add_option("--catalog", s.catalog, "Molecule catalog file")->check(CLI::ExistingFile);
  cmd->add_option("--molecule", s.molecules, "Molecule name (repeatable; default: all)")->needs(cat);
  auto* g = cmd->add_option("--gamma", s.gamma, "Dimensionless gamma")->excludes(cat);
  cmd->add_option("--epsilon", s.epsilon, "Dimensionless epsilon = 4 mu beta De")->needs(g);
}

void add_output(CLI::App* cmd, Output& o, bool units = true) {
  if (units) cmd->add_option("--units", o.units, "Energy units")->check(CLI::IsMember({"De", "eV", "cm-1"}));
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Write to this file instead of stdout");
}

pho_units units_of(const std::string& u) {
  if (u == "eV") return PHO_UNITS_EV;
  if (u == "cm-1") return PHO_UNITS_WAVENUMBER;
  return PHO_UNITS_DE;
}

std::vector<NamedModel> load_models(const Source& s) {
  std::vector<NamedModel> out;
  if (s.gamma) {
    pho_model* m = nullptr;
    check(pho_model_create(*s.gamma, s.epsilon.value_or(0.0), &m), "model");
    out.push_back({"gamma=" + fmt(*s.gamma), ModelPtr(m)});
    return out;
  }
  if (s.catalog.empty()) throw Failure{kInput, "either --catalog or --gamma is required"};
  pho_catalog* raw = nullptr;
  check(pho_catalog_parse_file(s.catalog.c_str(), &raw), s.catalog);
  CatalogPtr cat(raw);

  std::vector<std::size_t> picks;
  if (s.molecules.empty()) {
    for (std::size_t i = 0; i < pho_catalog_size(cat.get()); ++i) picks.push_back(i);
  } else {
    for (const auto& name : s.molecules) {
      std::size_t i = 0;
      check(pho_catalog_find(cat.get(), name.c_str(), &i), s.catalog);
      picks.push_back(i);
    }
  }
  if (picks.empty()) throw Failure{kInput, s.catalog + ": catalog contains no molecules"};
  for (std::size_t i : picks) {
    pho_record rec;
    check(pho_catalog_record_at(cat.get(), i, &rec), s.catalog);
    pho_model* m = nullptr;
    check(pho_catalog_model(cat.get(), i, &m), rec.name);
    out.push_back({rec.name, ModelPtr(m)});
  }
  return out;
}

void emit(const Output& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Failure{kInput, "cannot write '" + o.out + "'"};
  f << text;
  if (!f.flush()) throw Failure{kInput, "write failed for '" + o.out + "'"};
}

// Two-column report rendered as CSV (quantity,value) or a flat JSON object.
class Report {
 public:
  void add(const std::string& key, double v) { rows_.emplace_back(key, Value{v, {}, true}); }
  void add(const std::string& key, const std::string& v) { rows_.emplace_back(key, Value{0.0, v, false}); }

  std::string render(const std::string& format) const {
    if (format == "json") {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : rows_) {
        if (v.numeric) j[k] = std::isfinite(v.number) ? nlohmann::ordered_json(rounded(v.number)) : nullptr;
        else j[k] = v.text;
      }
      return j.dump(2) + "\n";
    }
    std::string out = "quantity,value\n";
    for (const auto& [k, v] : rows_) out += k + "," + (v.numeric ? fmt(v.number) : v.text) + "\n";
    return out;
  }

 private:
  struct Value {
    double number;
    std::string text;
    bool numeric;
  };
  std::vector<std::pair<std::string, Value>> rows_;
};

pho_model_info info_of(const pho_model* m) {
  pho_model_info info;
  check(pho_model_get_info(m, &info), "model");
  return info;
}

double convert(const pho_model* m, double value_De, pho_units u) {
  double out = 0.0;
  check(pho_energy_to_units(m, value_De, u, &out), "units");
  return out;
}

// ---- commands ----------------------------------------------------------------

struct SpectrumArgs {
  Source source;
  Output output;
  int n_max = 3;
  int l_max = 3;
};

std::string render_spectrum(const pho_spectrum* s, pho_units units, pho_format format, const std::string& name) {
  std::size_t needed = 0;
  pho_status st = pho_spectrum_render(s, units, format, name.c_str(), nullptr, 0, &needed);
  if (st != PHO_ERROR_BUFFER_TOO_SMALL) check(st, name);
  std::string buf(needed, '\0');
  check(pho_spectrum_render(s, units, format, name.c_str(), buf.data(), buf.size(), &needed), name);
  buf.resize(needed - 1);
  return buf;
}

int run_spectrum(const SpectrumArgs& a) {
  const auto models = load_models(a.source);
  const pho_units units = units_of(a.output.units);
  const bool json = a.output.format == "json";
  std::vector<std::string> parts;
  for (const auto& nm : models) {
    pho_spectrum* raw = nullptr;
    check(pho_spectrum_create(nm.model.get(), a.n_max, a.l_max, &raw), nm.name);
    SpectrumPtr s(raw);
    parts.push_back(render_spectrum(s.get(), units, json ? PHO_FORMAT_JSON : PHO_FORMAT_CSV, nm.name));
  }
  std::string text;
  if (parts.size() == 1) {
    text = parts.front();
  } else if (json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : parts) arr.push_back(nlohmann::ordered_json::parse(p));
    text = arr.dump(2) + "\n";
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) text += "# " + models[i].name + "\n" + parts[i];
  }
  emit(a.output, text);
  return kOk;
}

struct VerifyArgs {
  double gamma = 10.0;
  double epsilon = 1e-3;
  int n = 0;
  int l = 0;
  pho_verify_options grid{};
  Output output;
};

int run_verify(const VerifyArgs& a) {
  pho_verify_report r;
  check(pho_verify(a.gamma, a.epsilon, a.n, a.l, &a.grid, &r), "verify");
  Report rep;
  rep.add("gamma", r.gamma);
  rep.add("epsilon", r.epsilon);
  rep.add("n", r.n);
  rep.add("l", r.l);
  rep.add("grid_points", static_cast<double>(r.grid_points));
  rep.add("grid_spacing", r.grid_spacing);
  rep.add("levels", r.levels);
  rep.add("E0_closed_form", r.analytic_e0);
  rep.add("E0_oracle", r.oracle_e0);
  rep.add("E0_oracle_error", r.oracle_e0_error);
  rep.add("dE_closed_form", r.closed_form);
  rep.add("dE_oracle_moments", r.oracle_moments);
  rep.add("dE_exact_difference", r.exact_difference);
  rep.add("dE_exact_difference_half", r.exact_difference_half);
  rep.add("residual", r.residual);
  rep.add("residual_half", r.residual_half);
  rep.add("residual_ratio", r.ratio);
  rep.add("dev_closed_moments", r.dev_closed_moments);
  rep.add("dev_closed_exact", r.dev_closed_exact);
  rep.add("dev_moments_exact", r.dev_moments_exact);
  rep.add("consistency", r.consistency_ok ? "pass" : "fail");
  rep.add("eps2_scaling", r.scaling_ok ? "pass" : "fail");
  rep.add("result", r.passed ? "PASS" : "FAIL");
  emit(a.output, rep.render(a.output.format));
  if (!r.passed) std::cerr << "phospec: verification failed tolerances\n";
  return r.passed ? kOk : kOracle;
}

struct ExpandArgs {
  Source source;
  Output output;
  int n = 0;
  int l = 0;
  std::string order = "complete";
};

int run_expand(const ExpandArgs& a) {
  const auto models = load_models(a.source);
  const pho_units units = units_of(a.output.units);
  const auto order = a.order == "rotating" ? PHO_EXPANSION_ROTATING : PHO_EXPANSION_COMPLETE;
  std::string text;
  for (const auto& nm : models) {
    const pho_model* m = nm.model.get();
    double expansion = 0.0;
    pho_breakdown b;
    int low = 0;
    check(pho_energy_expansion(m, a.n, a.l, order, &expansion, &b, &low), nm.name);
    double e0 = 0.0;
    double de = 0.0;
    check(pho_unperturbed_energy(m, a.n, a.l, &e0), nm.name);
    check(pho_correction(m, a.n, a.l, &de), nm.name);
    const double exact = e0 + de;
    auto u = [&](double v) { return convert(m, v, units); };

    Report rep;
    rep.add("molecule", nm.name);
    rep.add("units", a.output.units);
    rep.add("n", a.n);
    rep.add("l", a.l);
    rep.add("harmonic", u(b.harmonic));
    rep.add("rotational", u(b.rotational));
    rep.add("dissociation_shift", u(b.dissociation_shift));
    rep.add("anharmonic", u(b.anharmonic));
    rep.add("coupling", u(b.coupling));
    rep.add("remainder", u(b.remainder));
    rep.add("expansion", u(expansion));
    rep.add("exact", u(exact));
    rep.add("residual", u(exact - expansion));
    const bool large = std::fabs(b.remainder) > 0.01 * std::fabs(exact);
    rep.add("remainder_above_1pct", large ? "yes" : "no");
    rep.add("low_gamma", low ? "yes" : "no");
    if (large) std::cerr << "phospec: " << nm.name << ": remainder exceeds 1% of the total energy\n";
    if (low) std::cerr << "phospec: " << nm.name << ": gamma < 5, the 1/gamma expansion converges poorly\n";
    text += rep.render(a.output.format);
  }
  emit(a.output, text);
  return kOk;
}

struct InfoArgs {
  Source source;
  Output output;
  int l_max = 5;
};

int run_info(const InfoArgs& a) {
  const auto models = load_models(a.source);
  const pho_units units = units_of(a.output.units);
  std::string text;
  for (const auto& nm : models) {
    const pho_model* m = nm.model.get();
    const pho_model_info info = info_of(m);
    Report rep;
    rep.add("molecule", nm.name);
    rep.add("gamma", info.gamma);
    rep.add("epsilon", info.epsilon);
    rep.add("hbar_omega_" + a.output.units, convert(m, info.hbar_omega, units));
    if (info.has_si) {
      rep.add("mu_kg", info.mu_kg);
      rep.add("De_J", info.De_joule);
      rep.add("re_m", info.re_meter);
      rep.add("beta_si", info.beta_si);
      rep.add("omega_rad_s", info.omega_rad_s);
      rep.add("minimal_length_m", info.minimal_length_m);
    }
    for (int l = 0; l <= a.l_max; ++l) {
      double lambda = 0.0;
      check(pho_model_lambda(m, l, &lambda), nm.name);
      rep.add("lambda_" + std::to_string(l), lambda);
    }
    text += rep.render(a.output.format);
  }
  emit(a.output, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudoharmonic-oscillator spectra with a minimal-length correction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pho_version()));

  SpectrumArgs sp;
  auto* spectrum = app.add_subcommand("spectrum", "Tabulate E0, dE and the expansion breakdown");
  add_source(spectrum, sp.source);
  add_output(spectrum, sp.output);
  spectrum->add_option("--nmax", sp.n_max, "Highest vibrational quantum number")->check(CLI::Range(0, 20));
  spectrum->add_option("--lmax", sp.l_max, "Highest rotational quantum number")->check(CLI::Range(0, 20));

  VerifyArgs vf;
  pho_verify_options_default(&vf.grid);
  auto* verify = app.add_subcommand("verify", "Cross-check the correction against the finite-difference oracle");
  verify->add_option("--gamma", vf.gamma, "Dimensionless gamma")->required();
  verify->add_option("--epsilon", vf.epsilon, "Dimensionless epsilon")->capture_default_str();
  verify->add_option("--n", vf.n)->check(CLI::Range(0, 19))->capture_default_str();
  verify->add_option("--l", vf.l)->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--levels", vf.grid.levels, "Grid refinement levels")->check(CLI::Range(2, 5))->capture_default_str();
  verify->add_option("--resolution", vf.grid.resolution, "Target h * k_max")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--max-spacing", vf.grid.max_spacing, "Upper bound on h, units of re")->check(CLI::PositiveNumber)->capture_default_str();
  add_output(verify, vf.output, false);

  ExpandArgs ex;
  auto* expand = app.add_subcommand("expand", "Break one level into the labelled 1/gamma terms");
  add_source(expand, ex.source);
  add_output(expand, ex.output);
  expand->add_option("--n", ex.n)->check(CLI::NonNegativeNumber)->capture_default_str();
  expand->add_option("--l", ex.l)->check(CLI::NonNegativeNumber)->capture_default_str();
  expand->add_option("--order", ex.order, "complete: through 1/gamma^3; rotating: the five labelled terms")
      ->check(CLI::IsMember({"complete", "rotating"}))
      ->capture_default_str();

  InfoArgs in;
  auto* info = app.add_subcommand("info", "Print gamma, epsilon, lambda(l), omega and the minimal length");
  add_source(info, in.source);
  add_output(info, in.output);
  info->add_option("--lmax", in.l_max, "Rows of the lambda(l) table")->check(CLI::Range(0, 20))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(sp);
    if (verify->parsed()) return run_verify(vf);
    if (expand->parsed()) return run_expand(ex);
    if (info->parsed()) return run_info(in);
  } catch (const Failure& f) {
    std::cerr << "phospec: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "phospec: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
