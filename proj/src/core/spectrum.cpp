#include "pho/core.hpp"
#include "pho/errors.hpp"

namespace pho {

SpectrumLine spectrum_line(const PhoModel& model, QuantumNumbers qn) {
  SpectrumLine line;
  line.qn = qn;
  line.e0 = unperturbed_energy(model, qn);
  line.delta_e = correction_pho(model, qn);
  line.total = line.e0 + line.delta_e;
  line.breakdown = energy_breakdown(model, qn);
  return line;
}

std::vector<SpectrumLine> full_spectrum(const PhoModel& model, int n_max, int l_max) {
  if (n_max < 0 || l_max < 0) throw DomainError("n_max and l_max must be non-negative");
  std::vector<SpectrumLine> lines;
  lines.reserve(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(l_max + 1));
  for (int l = 0; l <= l_max; ++l)
    for (int n = 0; n <= n_max; ++n) lines.push_back(spectrum_line(model, {n, l}));
  return lines;
}

}  // namespace pho
