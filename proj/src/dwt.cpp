#include "seizure/dwt.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace seizure::dwt {

std::string subband_name(SubbandId id) {
  switch (id) {
    case SubbandId::cd1: return "CD1";
    case SubbandId::cd2: return "CD2";
    case SubbandId::cd3: return "CD3";
    case SubbandId::cd4: return "CD4";
    case SubbandId::cd5: return "CD5";
    case SubbandId::ca5: return "CA5";
  }
  return "?";
}

AnalysisOutput analysis_step(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("analysis_step: empty input");
  const std::size_t half = (x.size() + 1) / 2;
  AnalysisOutput out;
  out.approx.resize(half);
  out.detail.resize(half);
  const auto& g = HaarFilterPair::lowpass;
  const auto& h = HaarFilterPair::highpass;
  for (std::size_t n = 0; n < half; ++n) {
    const double a = x[2 * n];
    const double b = (2 * n + 1 < x.size()) ? x[2 * n + 1] : x.back();
    out.approx[n] = g[0] * a + g[1] * b;
    out.detail[n] = h[0] * a + h[1] * b;
  }
  return out;
}

const std::vector<double>& SubbandSet::band(SubbandId id) const {
  if (id == SubbandId::ca5) return ca5;
  return cd[static_cast<std::size_t>(id)];
}

std::array<std::size_t, kLevels> level_lengths_for(std::size_t n) {
  std::array<std::size_t, kLevels> lengths{};
  for (auto& len : lengths) {
    n = (n + 1) / 2;
    len = n;
  }
  return lengths;
}

SubbandSet decompose5(std::span<const double> x) {
  if (x.size() < kMinLength) {
    throw std::invalid_argument("decompose5: minimum length " + std::to_string(kMinLength) +
                                ", got " + std::to_string(x.size()));
  }
  SubbandSet out;
  std::vector<double> approx(x.begin(), x.end());
  for (std::size_t level = 0; level < kLevels; ++level) {
    AnalysisOutput step = analysis_step(approx);
    out.cd[level] = std::move(step.detail);
    out.level_lengths[level] = step.approx.size();
    approx = std::move(step.approx);
  }
  out.ca5 = std::move(approx);
  return out;
}

void write_subbands_csv(const SubbandSet& s, std::ostream& os) {
  const auto old_precision = os.precision(17);
  std::size_t rows = 0;
  for (SubbandId id : kAllSubbands) {
    os << subband_name(id) << (id == SubbandId::ca5 ? "\n" : ",");
    rows = std::max(rows, s.band(id).size());
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (SubbandId id : kAllSubbands) {
      const auto& band = s.band(id);
      if (r < band.size()) os << band[r];
      os << (id == SubbandId::ca5 ? "\n" : ",");
    }
  }
  os.precision(old_precision);
}

}  // namespace seizure::dwt
