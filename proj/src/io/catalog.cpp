#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "pho/catalog.hpp"
#include "pho/errors.hpp"

namespace pho::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::size_t line, std::string_view key) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ParseError(line, "value of '" + std::string(key) + "' is not a finite number: '" + std::string(text) + "'");
  return value;
}

struct Pending {
  CatalogRecord record;
  std::optional<double> mu, De, re;
  std::optional<std::size_t> deformation_line;
  std::set<std::string, std::less<>> keys;
};

CatalogRecord finish(Pending& p) {
  const std::size_t line = p.record.line;
  const std::string& name = p.record.name;
  if (!p.mu) throw ParseError(line, "[" + name + "] is missing mu_amu");
  if (!p.De) throw ParseError(line, "[" + name + "] is missing De_eV");
  if (!p.re) throw ParseError(line, "[" + name + "] is missing re_angstrom");
  if (!p.deformation_line) throw ParseError(line, "[" + name + "] needs one of epsilon, lmin_m, beta_si");
  p.record.mu_amu = *p.mu;
  p.record.De_eV = *p.De;
  p.record.re_angstrom = *p.re;
  return p.record;
}

}  // namespace

std::vector<CatalogRecord> parse_catalog(std::istream& in) {
  std::vector<CatalogRecord> out;
  std::set<std::string, std::less<>> names;
  std::optional<Pending> current;
  std::string raw;
  std::size_t line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError(line, "unterminated section header");
      const std::string name(trim(text.substr(1, text.size() - 2)));
      if (name.empty()) throw ParseError(line, "empty molecule name");
      if (!names.insert(name).second) throw ParseError(line, "duplicate molecule '" + name + "'");
      if (current) out.push_back(finish(*current));
      current.emplace();
      current->record.name = name;
      current->record.line = line;
      continue;
    }

    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));
    if (!current) throw ParseError(line, "'" + std::string(key) + "' appears before any [molecule] header");
    if (key.empty()) throw ParseError(line, "missing key");
    if (value.empty()) throw ParseError(line, "missing value for '" + std::string(key) + "'");
    if (!current->keys.insert(std::string(key)).second)
      throw ParseError(line, "duplicate key '" + std::string(key) + "'");

    const double x = parse_number(value, line, key);
    auto positive = [&](std::optional<double>& slot) {
      if (!(x > 0.0)) throw ParseError(line, std::string(key) + " must be positive");
      slot = x;
    };
    auto deformation = [&](DeformationKind kind) {
      if (current->deformation_line)
        throw ParseError(line, "conflicting deformation keys (already given on line " +
                                   std::to_string(*current->deformation_line) + ")");
      if (!(x >= 0.0)) throw ParseError(line, std::string(key) + " must be non-negative");
      current->record.deformation = {kind, x};
      current->deformation_line = line;
    };

    if (key == "mu_amu") positive(current->mu);
    else if (key == "De_eV") positive(current->De);
    else if (key == "re_angstrom") positive(current->re);
    else if (key == "epsilon") deformation(DeformationKind::Epsilon);
    else if (key == "lmin_m") deformation(DeformationKind::MinimalLength);
    else if (key == "beta_si") deformation(DeformationKind::BetaSi);
    else throw ParseError(line, "unknown key '" + std::string(key) + "'");
  }
  if (current) out.push_back(finish(*current));
  return out;
}

std::vector<CatalogRecord> parse_catalog_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_catalog(in);
}

std::vector<CatalogRecord> parse_catalog_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog '" + path.string() + "'");
  return parse_catalog(in);
}

}  // namespace pho::io
