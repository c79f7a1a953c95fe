#include "seizure/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seizure {

void FusionWeights::validate() const {
  if (!std::isfinite(mu1) || !std::isfinite(mu2) || mu1 < 0.0 || mu2 < 0.0)
    throw std::invalid_argument("fusion weights must be non-negative");
  if (std::abs(mu1 + mu2 - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
}

std::string max_mode_name(MaxMode m) {
  return m == MaxMode::elementwise ? "elementwise" : "by_norm";
}

std::optional<MaxMode> parse_max_mode(std::string_view text) {
  if (text == "elementwise") return MaxMode::elementwise;
  if (text == "by_norm") return MaxMode::by_norm;
  return std::nullopt;
}

std::vector<double> detail_max(const DetailFeatures& cd, MaxMode mode) {
  const std::size_t len = cd[0].size();
  for (const auto& v : cd)
    if (v.size() != len) throw std::invalid_argument("detail_max: length mismatch");

  if (mode == MaxMode::by_norm) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < cd.size(); ++k) {
      const double n = norm2(cd[k]);
      if (n > best_norm) {
        best_norm = n;
        best = k;
      }
    }
    return {cd[best].begin(), cd[best].end()};
  }

  std::vector<double> out(cd[0].begin(), cd[0].end());
  for (std::size_t k = 1; k < cd.size(); ++k)
    for (std::size_t j = 0; j < len; ++j) out[j] = std::max(out[j], cd[k][j]);
  return out;
}

std::vector<double> fuse(std::span<const double> ca5, std::span<const double> cd,
                         const FusionWeights& w) {
  if (ca5.size() != cd.size()) throw std::invalid_argument("fuse: length mismatch");
  w.validate();
  std::vector<double> out(ca5.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = w.mu1 * ca5[j] + w.mu2 * cd[j];
  return out;
}

Matrix fuse_features(const std::array<Matrix, 6>& subband_features, const FusionWeights& w,
                     MaxMode mode) {
  const std::size_t n = subband_features[0].rows();
  std::size_t width = subband_features[0].cols();
  for (const auto& f : subband_features) {
    if (f.rows() != n) throw std::invalid_argument("fuse_features: row count mismatch");
    width = std::min(width, f.cols());
  }
  if (width == 0) throw std::invalid_argument("fuse_features: empty feature vectors");

  Matrix out(n, width);
  for (std::size_t r = 0; r < n; ++r) {
    DetailFeatures cd;
    for (std::size_t k = 0; k < 5; ++k) cd[k] = subband_features[k].row(r).first(width);
    const auto collapsed = detail_max(cd, mode);
    const auto fused = fuse(subband_features[5].row(r).first(width), collapsed, w);
    std::copy(fused.begin(), fused.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace seizure
