#pragma once

// Molecule catalog: INI-style records in spectroscopic units.
//
//   # comment
//   [HCl]
//   mu_amu      = 0.9801045
//   De_eV       = 4.61907
//   re_angstrom = 1.2746
//   lmin_m      = 1e-12        # or epsilon = ..., or beta_si = ...

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "pho/core.hpp"

namespace pho::io {

/// CODATA 2018. eV and hbar are exact by definition of the SI; amu is the
/// recommended value.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;          // J s
  double amu = 1.66053906660e-27;         // kg
  double electron_volt = 1.602176634e-19; // J
  double angstrom = 1e-10;                // m
  double speed_of_light = 299792458.0;    // m/s

  double planck() const;  // 2 pi hbar
};

const PhysicalConstants& codata2018();

enum class DeformationKind { Epsilon, MinimalLength, BetaSi };

struct Deformation {
  DeformationKind kind = DeformationKind::Epsilon;
  double value = 0.0;
};

struct CatalogRecord {
  std::string name;
  double mu_amu = 0.0;
  double De_eV = 0.0;
  double re_angstrom = 0.0;
  Deformation deformation;
  std::size_t line = 0;  // line of the section header
};

/// Throws ParseError naming the offending line.
std::vector<CatalogRecord> parse_catalog(std::istream& in);
std::vector<CatalogRecord> parse_catalog_string(std::string_view text);
/// Throws std::runtime_error if the file cannot be opened.
std::vector<CatalogRecord> parse_catalog_file(const std::filesystem::path& path);

/// Deformation canonicalization: lmin -> beta = lmin^2 / (5 hbar^2),
/// epsilon -> beta = epsilon / (4 mu De).
MolecularParams convert_units(const CatalogRecord& record, const PhysicalConstants& k = codata2018());

/// SI -> spectroscopic (deformation expressed as beta_si).
CatalogRecord to_record(const MolecularParams& params, std::string name, const PhysicalConstants& k = codata2018());

PhoModel model_of_record(const CatalogRecord& record, const PhysicalConstants& k = codata2018());

enum class EnergyUnit { De, ElectronVolt, Wavenumber };

/// "De", "eV", "cm-1".
EnergyUnit parse_energy_unit(std::string_view text);
const char* energy_unit_name(EnergyUnit unit);

/// Energy given in De (with De in joules) expressed in `unit`. Wavenumbers use
/// E / (h c) with h = 2 pi hbar, reported in cm^-1.
double energy_from_De(double value_De, double De_joule, EnergyUnit unit, const PhysicalConstants& k = codata2018());

double ev_to_wavenumber(double ev, const PhysicalConstants& k = codata2018());

}  // namespace pho::io
