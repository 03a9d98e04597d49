#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pho/catalog.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run phospec(const std::string& args) {
  const std::string cmd = std::string(PHOSPEC_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_file(const std::string& name, const std::string& text) {
  std::ofstream(name, std::ios::binary) << text;
  return name;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string record(const std::string& name, const std::string& deformation) {
  return "[" + name + "]\nmu_amu = 0.9801045\nDe_eV = 4.61907\nre_angstrom = 1.2746\n" + deformation + "\n";
}

const std::string kCatalog = write_file("cli_catalog.cat", record("Toy", "epsilon = 1e-3") +
                                                                record("Flat", "beta_si = 0") +
                                                                record("Small", "lmin_m = 1e-13"));

}  // namespace

TEST_CASE("spectrum table shape") {
  const Run r = phospec("spectrum --catalog " + kCatalog + " --molecule Toy --nmax 3 --lmax 3 --units De --format csv");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 17);
  CHECK(rows[0].size() == 11);
  CHECK(rows[0][0] == "n");
  CHECK(rows[0][10] == "remainder");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == 11);
    CHECK(std::stod(rows[i][3]) > 0.0);
  }
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("zero deformation gives a zero dE column") {
  const Run r = phospec("spectrum --catalog " + kCatalog + " --molecule Flat --nmax 2 --lmax 2 --units cm-1");
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][3] == "0");
    CHECK(rows[i][7] == "0");
    CHECK(rows[i][8] == "0");
    CHECK(rows[i][9] == "0");
  }
}

TEST_CASE("several molecules") {
  const Run csv = phospec("spectrum --catalog " + kCatalog + " --nmax 0 --lmax 0");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("# Toy\n") == 0);
  CHECK(csv.out.find("# Flat\n") != std::string::npos);
  CHECK(csv.out.find("# Small\n") != std::string::npos);

  const Run json = phospec("spectrum --catalog " + kCatalog + " --molecule Small --molecule Toy --format json --units eV");
  REQUIRE(json.code == 0);
  const auto j = nlohmann::json::parse(json.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["molecule"] == "Small");
  CHECK(j[1]["units"] == "eV");
  CHECK(j[1]["rows"].size() == 16);
}

TEST_CASE("output file") {
  std::remove("cli_out.csv");
  const Run r = phospec("spectrum --gamma 10 --epsilon 1e-3 --nmax 1 --lmax 1 --out cli_out.csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in("cli_out.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(csv_rows(ss.str()).size() == 5);
}

TEST_CASE("input errors exit with 2") {
  CHECK(phospec("spectrum --catalog " + kCatalog + " --molecule Missing").code == 2);
  CHECK(phospec("spectrum --catalog no_such_file.cat").code == 2);
  CHECK(phospec("spectrum --catalog " + write_file("cli_bad.cat", "[X]\nmu_amu = 1\n") ).code == 2);
  CHECK(phospec("spectrum --gamma 10 --nmax 21").code == 2);
  CHECK(phospec("spectrum --gamma 10 --units hartree").code == 2);
  CHECK(phospec("spectrum --gamma 10 --units eV").code == 2);
  CHECK(phospec("spectrum").code == 2);
  CHECK(phospec("frobnicate").code == 2);
  CHECK(phospec("").code == 2);
}

TEST_CASE("domain errors exit with 3") {
  CHECK(phospec("spectrum --gamma 0.5 --epsilon 1e-3").code == 3);
  CHECK(phospec("verify --gamma 0.5 --epsilon 1e-3").code == 3);
  CHECK(phospec("expand --gamma 1.5 --epsilon 0").code == 3);
  CHECK(phospec("verify --gamma 10 --epsilon 50").code == 3);
}

TEST_CASE("verify") {
  const Run zero = phospec("verify --gamma 10 --epsilon 0 --n 0 --l 0");
  CHECK(zero.code == 0);
  CHECK(zero.out.find("dE_closed_form,0\n") != std::string::npos);
  CHECK(zero.out.find("dE_oracle_moments,0\n") != std::string::npos);
  CHECK(zero.out.find("dE_exact_difference,0\n") != std::string::npos);

  const Run r = phospec("verify --gamma 10 --epsilon 1e-3 --n 0 --l 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("result,PASS\n") != std::string::npos);
  // the report is a function of its inputs only
  CHECK(phospec("verify --gamma 10 --epsilon 1e-3 --n 0 --l 0").out == r.out);

  const Run j = phospec("verify --gamma 10 --epsilon 1e-3 --n 1 --l 1 --format json");
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["result"] == "PASS");
  CHECK(doc["residual_ratio"].get<double>() == doctest::Approx(4.0).epsilon(0.05));

  // a grid too coarse for the 1e-6 consistency target fails with exit 4
  CHECK(phospec("verify --gamma 10 --epsilon 1e-3 --n 10 --resolution 5 --max-spacing 0.3").code == 4);
}

TEST_CASE("expand") {
  const Run r = phospec("expand --gamma 10 --epsilon 0 --n 1 --l 2");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("dissociation_shift,0\n") != std::string::npos);
  CHECK(r.out.find("anharmonic,0\n") != std::string::npos);
  CHECK(r.out.find("coupling,0\n") != std::string::npos);
  CHECK(r.out.find("harmonic,0.6\n") != std::string::npos);

  const Run k = phospec("expand --gamma 10 --epsilon 1e-3 --n 1 --l 2 --format json");
  REQUIRE(k.code == 0);
  const auto j = nlohmann::json::parse(k.out);
  CHECK(j["remainder_above_1pct"] == "no");
  CHECK(j["coupling"].get<double>() > 0.0);

  const Run low = phospec("expand --gamma 3 --epsilon 0 --n 2 --l 4 --format json");
  REQUIRE(low.code == 0);
  const auto lj = nlohmann::json::parse(low.out);
  CHECK(lj["low_gamma"] == "yes");
  CHECK(lj["remainder_above_1pct"] == "yes");
}

TEST_CASE("info") {
  const Run r = phospec("info --catalog " + kCatalog + " --molecule Small --format json --lmax 2");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["minimal_length_m"].get<double>() == doctest::Approx(1e-13).epsilon(1e-12));
  CHECK(j["gamma"].get<double>() > 10.0);
  CHECK(j.contains("lambda_2"));
  CHECK_FALSE(j.contains("lambda_3"));
}

TEST_CASE("epsilon and the equivalent minimal length print the same table") {
  const auto& k = pho::io::codata2018();
  const double eps = 1e-3;
  const double mu = 0.9801045 * k.amu, De = 4.61907 * k.electron_volt;
  const double lmin = k.hbar * std::sqrt(5.0 * eps / (4.0 * mu * De));
  char line[64];
  std::snprintf(line, sizeof line, "lmin_m = %.17g", lmin);
  const std::string a = write_file("cli_eps.cat", record("M", "epsilon = 1e-3"));
  const std::string b = write_file("cli_lmin.cat", record("M", line));
  for (const char* units : {"De", "eV", "cm-1"}) {
    const Run ra = phospec("spectrum --catalog " + a + " --nmax 5 --lmax 5 --units " + units);
    const Run rb = phospec("spectrum --catalog " + b + " --nmax 5 --lmax 5 --units " + units);
    REQUIRE(ra.code == 0);
    CHECK(ra.out == rb.out);
  }
}
