#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pho/catalog.hpp"
#include "pho/errors.hpp"
#include "pho/table.hpp"

using namespace pho;
using namespace pho::io;

namespace {

const char* kTwo = R"(# two molecules
[A]
mu_amu = 1.5
De_eV = 4.0
re_angstrom = 1.2   # trailing comment
epsilon = 1e-3

[ B ]
mu_amu=7
De_eV=11
re_angstrom=1.1
lmin_m=2e-13
)";

std::size_t error_line(const std::string& text) {
  try {
    parse_catalog_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("catalog parsing") {
  CHECK(parse_catalog_string("").empty());
  CHECK(parse_catalog_string("# only a comment\n\n").empty());
  const auto recs = parse_catalog_string(kTwo);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].name == "A");
  CHECK(recs[0].mu_amu == 1.5);
  CHECK(recs[0].re_angstrom == 1.2);
  CHECK(recs[0].deformation.kind == DeformationKind::Epsilon);
  CHECK(recs[0].line == 2);
  CHECK(recs[1].name == "B");
  CHECK(recs[1].deformation.kind == DeformationKind::MinimalLength);
  CHECK(recs[1].deformation.value == 2e-13);
}

TEST_CASE("catalog errors name the line") {
  const std::string head = "[X]\nmu_amu = 1\nDe_eV = 1\nre_angstrom = 1\n";
  CHECK(error_line(head + "epsilon = 0.1\nlmin_m = 1e-12\n") == 6);
  CHECK(error_line(head) == 1);                                // no deformation
  CHECK(error_line("[X]\nmu_amu = 1\nDe_eV = 1\nepsilon = 0\n") == 1);  // missing re
  CHECK(error_line(head + "epsilon = -1\n") == 5);
  CHECK(error_line("[X]\nmu_amu = 0\n") == 2);
  CHECK(error_line("[X]\nmu_amu = -3\n") == 2);
  CHECK(error_line(head + "epsilon = abc\n") == 5);
  CHECK(error_line(head + "colour = red\n") == 5);
  CHECK(error_line(head + "mu_amu = 2\n") == 5);
  CHECK(error_line(head + "epsilon = 0\n[X]\n") == 6);
  CHECK(error_line("mu_amu = 1\n") == 1);
  CHECK(error_line("[X\n") == 1);
  CHECK(error_line("[]\n") == 1);
  CHECK(error_line(head + "just words\n") == 5);
  CHECK(error_line(head + "epsilon = 1e-3 4\n") == 5);
  CHECK(error_line(head + "epsilon = 0\n") == 0);
  CHECK_THROWS_AS(parse_catalog_file("/nonexistent/catalog.cat"), std::runtime_error);
}

TEST_CASE("CODATA 2018 constants") {
  const auto& k = codata2018();
  CHECK(k.electron_volt == 1.602176634e-19);
  CHECK(k.hbar == 1.054571817e-34);
  CHECK(k.amu == 1.66053906660e-27);
  CHECK(k.angstrom == 1e-10);
  CHECK(k.speed_of_light == 299792458.0);
  // h = 2 pi hbar with the 10-digit hbar, so the last digits differ from the
  // tabulated 8065.543937 cm^-1
  CHECK(ev_to_wavenumber(1.0) == doctest::Approx(8065.54394229112520).epsilon(1e-14));
  CHECK(ev_to_wavenumber(1.0) == doctest::Approx(8065.543937).epsilon(1e-9));
}

TEST_CASE("unit conversion of records") {
  const auto recs = parse_catalog_string(kTwo);
  const auto& k = codata2018();
  const MolecularParams a = convert_units(recs[0]);
  CHECK(a.mu == 1.5 * k.amu);
  CHECK(a.De == 4.0 * k.electron_volt);
  CHECK(a.re == 1.2 * k.angstrom);
  CHECK(rel(4.0 * a.mu * a.beta * a.De, 1e-3) < 1e-15);
  CHECK(model_of_record(recs[0]).epsilon() == 1e-3);

  const MolecularParams b = convert_units(recs[1]);
  CHECK(rel(k.hbar * std::sqrt(5.0 * b.beta), 2e-13) < 1e-15);

  CatalogRecord zero = recs[1];
  zero.deformation.value = 0.0;
  CHECK(convert_units(zero).beta == 0.0);
  CHECK(model_of_record(zero).epsilon() == 0.0);
}

TEST_CASE("SI and spectroscopic round trip") {
  const auto recs = parse_catalog_string(kTwo);
  for (const auto& r : recs) {
    const MolecularParams si = convert_units(r);
    const MolecularParams back = convert_units(to_record(si, r.name));
    CHECK(rel(back.mu, si.mu) < 1e-14);
    CHECK(rel(back.De, si.De) < 1e-14);
    CHECK(rel(back.re, si.re) < 1e-14);
    CHECK(rel(back.beta, si.beta) < 1e-14);
  }
}

TEST_CASE("energy units compose") {
  const auto& k = codata2018();
  for (double ev : {0.01, 1.0, 4.61907, 10.84514}) {
    const double De_J = 4.61907 * k.electron_volt;
    const double in_De = ev * k.electron_volt / De_J;
    const double via = energy_from_De(in_De, De_J, EnergyUnit::Wavenumber);
    CHECK(rel(via, ev_to_wavenumber(ev)) < 1e-12);
    CHECK(rel(energy_from_De(in_De, De_J, EnergyUnit::ElectronVolt), ev) < 1e-12);
  }
  CHECK(energy_from_De(0.25, 123.0, EnergyUnit::De) == 0.25);
  CHECK(parse_energy_unit("cm-1") == EnergyUnit::Wavenumber);
  CHECK(std::string(energy_unit_name(EnergyUnit::ElectronVolt)) == "eV");
  CHECK_THROWS_AS(parse_energy_unit("hartree"), std::invalid_argument);
}

TEST_CASE("CSV re-parse equals the rendered table at 12 digits") {
  const auto recs = parse_catalog_string(kTwo);
  for (const auto& r : recs) {
    const PhoModel m = model_of_record(r);
    for (EnergyUnit u : {EnergyUnit::De, EnergyUnit::ElectronVolt, EnergyUnit::Wavenumber}) {
      const OutputTable t = make_table(full_spectrum(m, 4, 3), u, m.De());
      const std::string csv = render_csv(t);
      CHECK(csv.rfind("n,l,E0,dE,E,harmonic,rotational,dissociation_shift,anharmonic,coupling,remainder\n", 0) == 0);
      CHECK(csv.find('\r') == std::string::npos);
      const OutputTable back = parse_csv(csv, u);
      REQUIRE(back.rows.size() == t.rows.size());
      CHECK(back.rows.size() == 20);
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(back.rows[i].n == t.rows[i].n);
        CHECK(back.rows[i].l == t.rows[i].l);
        for (std::size_t j = 0; j < t.rows[i].values.size(); ++j)
          CHECK(format_number(back.rows[i].values[j]) == format_number(t.rows[i].values[j]));
      }
      CHECK(render_csv(back) == csv);
    }
  }
  CHECK_THROWS_AS(parse_csv("n,l\n1,2\n"), ParseError);
  CHECK_THROWS_AS(parse_csv(""), ParseError);
}

TEST_CASE("number format") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-2.5e-20) == "-2.5e-20");
}

TEST_CASE("JSON table layout") {
  const PhoModel m(10.0, 1e-3);
  const OutputTable t = make_table(full_spectrum(m, 1, 1), EnergyUnit::De);
  const auto j = nlohmann::json::parse(render_json(t, "demo"));
  CHECK(j["molecule"] == "demo");
  CHECK(j["units"] == "De");
  REQUIRE(j["columns"].size() == kTableColumns.size());
  CHECK(j["columns"][3] == "dE");
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["rows"][0].size() == 11);
  CHECK(format_number(j["rows"][2][4].get<double>()) == format_number(t.rows[2].values[2]));
}
