#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

#include "pho/errors.hpp"
#include "pho/table.hpp"

namespace pho::io {

OutputTable make_table(const std::vector<SpectrumLine>& lines, EnergyUnit units, double De_joule) {
  OutputTable t;
  t.units = units;
  t.rows.reserve(lines.size());
  for (const auto& s : lines) {
    const auto& b = s.breakdown;
    const std::array<double, 9> raw = {s.e0,          s.delta_e,   s.total,   b.harmonic, b.rotational,
                                       b.dissociation_shift, b.anharmonic, b.coupling, b.remainder};
    TableRow row{s.qn.n, s.qn.l, {}};
    for (std::size_t i = 0; i < raw.size(); ++i) row.values[i] = energy_from_De(raw[i], De_joule, units);
    t.rows.push_back(row);
  }
  return t;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string render_csv(const OutputTable& table) {
  std::string out;
  for (std::size_t i = 0; i < kTableColumns.size(); ++i) {
    if (i) out += ',';
    out += kTableColumns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    out += std::to_string(row.n) + ',' + std::to_string(row.l);
    for (double v : row.values) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const OutputTable& table, std::string_view name) {
  nlohmann::ordered_json j;
  j["molecule"] = std::string(name);
  j["units"] = energy_unit_name(table.units);
  j["columns"] = kTableColumns;
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::json::array({row.n, row.l});
    for (double v : row.values) r.push_back(std::strtod(format_number(v).c_str(), nullptr));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

template <class T>
T field(std::string_view s, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, "malformed field '" + std::string(s) + "'");
  return v;
}

}  // namespace

OutputTable parse_csv(std::string_view text, EnergyUnit units) {
  OutputTable t;
  t.units = units;
  std::size_t line = 0;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view row = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line;
    if (row.empty()) continue;
    const auto cells = split(row);
    if (cells.size() != kTableColumns.size())
      throw ParseError(line, "expected " + std::to_string(kTableColumns.size()) + " fields");
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] != kTableColumns[i]) throw ParseError(line, "unexpected column '" + std::string(cells[i]) + "'");
      header = false;
      continue;
    }
    TableRow r;
    r.n = field<int>(cells[0], line);
    r.l = field<int>(cells[1], line);
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = field<double>(cells[i + 2], line);
    t.rows.push_back(r);
  }
  if (header) throw ParseError(line, "missing header row");
  return t;
}

}  // namespace pho::io
