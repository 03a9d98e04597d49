#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "pho/catalog.hpp"
#include "pho/core.hpp"

namespace pho::io {

/// Column order of every rendered spectrum table.
inline constexpr std::array<const char*, 11> kTableColumns = {
    "n", "l", "E0", "dE", "E", "harmonic", "rotational", "dissociation_shift", "anharmonic", "coupling",
    "remainder"};

struct TableRow {
  int n = 0;
  int l = 0;
  std::array<double, 9> values{};  // E0 .. remainder, in the table's units
};

struct OutputTable {
  EnergyUnit units = EnergyUnit::De;
  std::vector<TableRow> rows;
};

/// De_joule is ignored for EnergyUnit::De.
OutputTable make_table(const std::vector<SpectrumLine>& lines, EnergyUnit units, double De_joule = 1.0);

/// %.12g, the fixed numeric format of every table.
std::string format_number(double value);

/// Header row plus one LF-terminated row per line.
std::string render_csv(const OutputTable& table);

/// {"molecule": ..., "units": ..., "columns": [...], "rows": [[...], ...]}
std::string render_json(const OutputTable& table, std::string_view name);

/// Inverse of render_csv. Throws ParseError on malformed input.
OutputTable parse_csv(std::string_view text, EnergyUnit units = EnergyUnit::De);

}  // namespace pho::io
