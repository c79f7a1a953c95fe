#pragma once

// Five-level Haar (Daubechies-1) wavelet decomposition.

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seizure::dwt {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Orthonormal Haar analysis pair: g = [1, 1]/sqrt2, h = [1, -1]/sqrt2.
struct HaarFilterPair {
  static constexpr std::array<double, 2> lowpass{kInvSqrt2, kInvSqrt2};
  static constexpr std::array<double, 2> highpass{kInvSqrt2, -kInvSqrt2};
};

inline constexpr std::size_t kLevels = 5;
inline constexpr std::size_t kMinLength = 32;

enum class SubbandId { cd1, cd2, cd3, cd4, cd5, ca5 };

inline constexpr std::array<SubbandId, 6> kAllSubbands{SubbandId::cd1, SubbandId::cd2,
                                                       SubbandId::cd3, SubbandId::cd4,
                                                       SubbandId::cd5, SubbandId::ca5};

std::string subband_name(SubbandId id);  // "CD1" ... "CA5"

struct AnalysisOutput {
  std::vector<double> approx;
  std::vector<double> detail;
};

// One filter-and-downsample step. Odd-length input is padded by repeating
// the last sample once.
AnalysisOutput analysis_step(std::span<const double> x);

struct SubbandSet {
  std::array<std::vector<double>, kLevels> cd;  // cd[0] is CD1
  std::vector<double> ca5;
  std::array<std::size_t, kLevels> level_lengths{};

  const std::vector<double>& band(SubbandId id) const;
};

// Throws std::invalid_argument for input shorter than kMinLength.
SubbandSet decompose5(std::span<const double> x);

// ceil(n / 2) applied `kLevels` times.
std::array<std::size_t, kLevels> level_lengths_for(std::size_t n);

// Debug dump: one column block per subband, rows padded with empty cells.
void write_subbands_csv(const SubbandSet& s, std::ostream& os);

inline constexpr std::string_view kBoundaryPolicy = "replicate-last-sample";

}  // namespace seizure::dwt
