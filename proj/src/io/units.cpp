#include <cmath>
#include <numbers>
#include <string>

#include "pho/catalog.hpp"
#include "pho/errors.hpp"

namespace pho::io {

double PhysicalConstants::planck() const { return 2.0 * std::numbers::pi * hbar; }

const PhysicalConstants& codata2018() {
  static const PhysicalConstants k{};
  return k;
}

MolecularParams convert_units(const CatalogRecord& r, const PhysicalConstants& k) {
  MolecularParams p;
  p.mu = r.mu_amu * k.amu;
  p.De = r.De_eV * k.electron_volt;
  p.re = r.re_angstrom * k.angstrom;
  switch (r.deformation.kind) {
    case DeformationKind::Epsilon:
      p.beta = r.deformation.value / (4.0 * p.mu * p.De);
      break;
    case DeformationKind::MinimalLength: {
      // (Delta x)_min = hbar sqrt(5 beta) for beta' = 2 beta
      const double x = r.deformation.value / k.hbar;
      p.beta = x * x / 5.0;
      break;
    }
    case DeformationKind::BetaSi:
      p.beta = r.deformation.value;
      break;
  }
  return p;
}

CatalogRecord to_record(const MolecularParams& p, std::string name, const PhysicalConstants& k) {
  CatalogRecord r;
  r.name = std::move(name);
  r.mu_amu = p.mu / k.amu;
  r.De_eV = p.De / k.electron_volt;
  r.re_angstrom = p.re / k.angstrom;
  r.deformation = {DeformationKind::BetaSi, p.beta};
  return r;
}

PhoModel model_of_record(const CatalogRecord& r, const PhysicalConstants& k) {
  const MolecularParams p = convert_units(r, k);
  const PhoModel m = model_of(p, k.hbar);
  // A directly given epsilon is kept as typed rather than round-tripped through beta.
  if (r.deformation.kind == DeformationKind::Epsilon) return PhoModel(m.gamma(), r.deformation.value, m.De(), m.re());
  return m;
}

EnergyUnit parse_energy_unit(std::string_view text) {
  if (text == "De") return EnergyUnit::De;
  if (text == "eV") return EnergyUnit::ElectronVolt;
  if (text == "cm-1") return EnergyUnit::Wavenumber;
  throw std::invalid_argument("unknown energy unit '" + std::string(text) + "' (expected De, eV or cm-1)");
}

const char* energy_unit_name(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::De: return "De";
    case EnergyUnit::ElectronVolt: return "eV";
    case EnergyUnit::Wavenumber: return "cm-1";
  }
  return "?";
}

double energy_from_De(double value_De, double De_joule, EnergyUnit unit, const PhysicalConstants& k) {
  switch (unit) {
    case EnergyUnit::De: return value_De;
    case EnergyUnit::ElectronVolt: return value_De * De_joule / k.electron_volt;
    case EnergyUnit::Wavenumber: return value_De * De_joule / (k.planck() * k.speed_of_light) / 100.0;
  }
  return value_De;
}

double ev_to_wavenumber(double ev, const PhysicalConstants& k) {
  return ev * k.electron_volt / (k.planck() * k.speed_of_light) / 100.0;
}

}  // namespace pho::io
