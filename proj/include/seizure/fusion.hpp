#pragma once

// Feature-level fusion: the five detail-band vectors are collapsed with MAX,
// then mixed with the approximation-band vector as mu1 * CA5 + mu2 * CD.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seizure/matrix.hpp"

namespace seizure {

struct FusionWeights {
  double mu1 = 0.7;
  double mu2 = 0.3;

  // Throws std::invalid_argument unless mu1 + mu2 == 1 (to 1e-12) and both >= 0.
  void validate() const;
};

enum class MaxMode { elementwise, by_norm };

std::string max_mode_name(MaxMode m);
std::optional<MaxMode> parse_max_mode(std::string_view text);

using DetailFeatures = std::array<std::span<const double>, 5>;

// elementwise: out[j] = max_k cd_k[j]. by_norm: the cd_k with the largest
// Euclidean norm (first wins on ties).
std::vector<double> detail_max(const DetailFeatures& cd, MaxMode mode = MaxMode::elementwise);

std::vector<double> fuse(std::span<const double> ca5, std::span<const double> cd,
                         const FusionWeights& w);

// Row-wise fusion of per-subband feature matrices ordered CD1..CD5, CA5.
// Every matrix is first cut to the smallest column count among the six.
Matrix fuse_features(const std::array<Matrix, 6>& subband_features, const FusionWeights& w,
                     MaxMode mode = MaxMode::elementwise);

}  // namespace seizure
