#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "seizure/dataset.hpp"
#include "seizure/dwt.hpp"
#include "seizure/matrix.hpp"

namespace seizure {

enum class Method { pca, ica, lda };

std::string method_name(Method m);  // "pca" / "ica" / "lda"
std::optional<Method> parse_method(std::string_view text);

// N records x M coefficients of one subband.
struct SubbandMatrix {
  dwt::SubbandId id = dwt::SubbandId::cd1;
  Matrix x;
};

struct ProjectionModel {
  Method method = Method::pca;
  std::vector<double> mean;  // length M
  Matrix w;                  // M x L'
  std::uint64_t seed = 0;
  bool converged = true;
  int iterations = 0;
  std::vector<std::string> warnings;

  std::size_t input_dim() const { return w.rows(); }
  std::size_t output_dim() const { return w.cols(); }
};

ProjectionModel fit_pca(const SubbandMatrix& x, std::size_t components);

struct IcaOptions {
  int max_iterations = 200;
  double tolerance = 1e-6;
};

// Whitening to `components` dims, then symmetric fixed-point unmixing with a
// tanh contrast. Components are ordered by decreasing negentropy estimate.
ProjectionModel fit_ica(const SubbandMatrix& x, std::size_t components, std::uint64_t seed,
                        const IcaOptions& options = {});

inline constexpr double kLdaRegularization = 1e-6;

// Two-class Fisher direction w ~ (S_w + eps tr(S_w)/M I)^-1 (mu+ - mu-), unit
// length, oriented so the positive class projects higher. Two classes give
// at most one output dimension whatever `components` is.
ProjectionModel fit_lda(const SubbandMatrix& x, std::span<const Label> labels,
                        std::size_t components);

ProjectionModel fit(Method method, const SubbandMatrix& x, std::span<const Label> labels,
                    std::size_t components, std::uint64_t seed);

// (X - mean) * W
Matrix transform(const ProjectionModel& model, const Matrix& x);

nlohmann::json to_json(const ProjectionModel& model, std::string_view mode);

// Linear score function of the Gaussian discriminant with a pooled covariance:
//   s_i(x) = -1/2 mu_i^T S^-1 mu_i + mu_i^T S^-1 x + log P(i)
struct LdaScoreParams {
  std::array<std::vector<double>, 2> means;  // indexed by Label
  Matrix pooled_cov;
  std::array<double, 2> priors{};
  std::array<double, 2> d0{};                     // -1/2 mu_i^T S^-1 mu_i
  std::array<std::vector<double>, 2> d;           // S^-1 mu_i
};

LdaScoreParams fit_lda_score(const Matrix& x, std::span<const Label> labels);

std::array<double, 2> lda_score(const LdaScoreParams& params, std::span<const double> x);
Label lda_score_predict(const LdaScoreParams& params, std::span<const double> x);

}  // namespace seizure
