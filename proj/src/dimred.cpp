#include "seizure/dimred.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "seizure/random.hpp"

namespace seizure {

namespace {

// E[log cosh(v)] for v ~ N(0, 1)
constexpr double kGaussianLogCosh = 0.37456720749067;

void require_rows(const SubbandMatrix& x, std::size_t min_rows, const char* who) {
  if (x.x.rows() < min_rows)
    throw std::invalid_argument(std::string(who) + ": need at least " + std::to_string(min_rows) +
                                " rows, got " + std::to_string(x.x.rows()));
  if (x.x.cols() == 0) throw std::invalid_argument(std::string(who) + ": zero columns");
}

// W <- (W W^T)^{-1/2} W
Matrix symmetric_decorrelate(const Matrix& w) {
  const EigenResult eig = sym_eigen(w * w.transpose());
  const std::size_t k = w.rows();
  Matrix inv_sqrt(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    const double lambda = std::max(eig.values[j], 1e-300);
    const double s = 1.0 / std::sqrt(lambda);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) inv_sqrt(r, c) += eig.vectors(r, j) * s * eig.vectors(c, j);
  }
  return inv_sqrt * w;
}

std::array<std::vector<std::size_t>, 2> split_by_label(std::span<const Label> labels) {
  std::array<std::vector<std::size_t>, 2> idx;
  for (std::size_t i = 0; i < labels.size(); ++i) idx[static_cast<int>(labels[i])].push_back(i);
  return idx;
}

std::vector<double> mean_of_rows(const Matrix& x, const std::vector<std::size_t>& rows) {
  std::vector<double> mean(x.cols(), 0.0);
  for (std::size_t r : rows) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) mean[c] += row[c];
  }
  for (double& m : mean) m /= static_cast<double>(rows.size());
  return mean;
}

// Rows centered on their own class mean.
Matrix within_class_centered(const Matrix& x, std::span<const Label> labels,
                             const std::array<std::vector<double>, 2>& means) {
  Matrix z = x;
  for (std::size_t r = 0; r < z.rows(); ++r) {
    const auto& mu = means[static_cast<int>(labels[r])];
    auto row = z.row(r);
    for (std::size_t c = 0; c < z.cols(); ++c) row[c] -= mu[c];
  }
  return z;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::pca: return "pca";
    case Method::ica: return "ica";
    case Method::lda: return "lda";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : {Method::pca, Method::ica, Method::lda}) {
    const std::string name = method_name(m);
    if (text.size() == name.size() &&
        std::equal(text.begin(), text.end(), name.begin(),
                   [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == b; }))
      return m;
  }
  return std::nullopt;
}

ProjectionModel fit_pca(const SubbandMatrix& x, std::size_t components) {
  require_rows(x, 2, "fit_pca");
  if (components == 0) throw std::invalid_argument("fit_pca: components must be >= 1");
  ProjectionModel model;
  model.method = Method::pca;
  model.mean = column_means(x.x);
  const EigenResult axes = principal_axes(center(x.x, model.mean), components);
  if (axes.values.empty()) throw std::invalid_argument("fit_pca: zero-variance data");
  if (axes.values.size() < components)
    model.warnings.push_back("fit_pca: rank " + std::to_string(axes.values.size()) +
                             " below requested " + std::to_string(components));
  model.w = axes.vectors;
  return model;
}

ProjectionModel fit_ica(const SubbandMatrix& x, std::size_t components, std::uint64_t seed,
                        const IcaOptions& options) {
  require_rows(x, 2, "fit_ica");
  if (components == 0) throw std::invalid_argument("fit_ica: components must be >= 1");
  ProjectionModel model;
  model.method = Method::ica;
  model.seed = seed;
  model.mean = column_means(x.x);
  const Matrix xc = center(x.x, model.mean);
  const EigenResult axes = principal_axes(xc, components);
  const std::size_t k = axes.values.size();
  if (k == 0) throw std::invalid_argument("fit_ica: zero-variance data");
  if (k < components)
    model.warnings.push_back("fit_ica: rank " + std::to_string(k) + " below requested " +
                             std::to_string(components) + ", using " + std::to_string(k));

  // whitening basis: M x k, V D^{-1/2}
  Matrix whitener = axes.vectors;
  for (std::size_t r = 0; r < whitener.rows(); ++r)
    for (std::size_t j = 0; j < k; ++j) whitener(r, j) /= std::sqrt(axes.values[j]);
  const Matrix z = xc * whitener;  // N x k, identity covariance
  const std::size_t n = z.rows();
  const double inv_n = 1.0 / static_cast<double>(n);

  NormalSource normal(seed);
  Matrix w(k, k);
  for (double& v : w.data()) v = normal();
  w = symmetric_decorrelate(w);

  Matrix best = w;
  double best_delta = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    Matrix next(k, k);
    std::vector<double> mean_deriv(k, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      auto zs = z.row(s);
      for (std::size_t i = 0; i < k; ++i) {
        const double g = std::tanh(dot(w.row(i), zs));
        mean_deriv[i] += 1.0 - g * g;
        auto dst = next.row(i);
        for (std::size_t c = 0; c < k; ++c) dst[c] += g * zs[c];
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      auto dst = next.row(i);
      auto src = w.row(i);
      for (std::size_t c = 0; c < k; ++c) dst[c] = dst[c] * inv_n - mean_deriv[i] * inv_n * src[c];
    }
    next = symmetric_decorrelate(next);

    double delta = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      delta = std::max(delta, std::abs(1.0 - std::abs(dot(next.row(i), w.row(i)))));
    w = std::move(next);
    model.iterations = iter;
    if (delta < best_delta) {
      best_delta = delta;
      best = w;
    }
    if (delta < options.tolerance) break;
  }
  if (best_delta >= options.tolerance) {
    model.converged = false;
    model.warnings.push_back("fit_ica: no convergence after " +
                             std::to_string(options.max_iterations) + " iterations");
    w = best;
  }

  // Order components by negentropy estimate, largest first.
  const Matrix sources = z * w.transpose();
  std::vector<double> negentropy(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s) acc += std::log(std::cosh(sources(s, j)));
    const double diff = acc * inv_n - kGaussianLogCosh;
    negentropy[j] = diff * diff;
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return negentropy[a] > negentropy[b]; });

  // Full projection: M x k = whitener * W^T, columns reordered.
  const Matrix full = whitener * w.transpose();
  model.w = Matrix(full.rows(), k);
  std::vector<double> column(full.rows());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < full.rows(); ++r) column[r] = full(r, order[j]);
    canonicalize_sign(column);
    for (std::size_t r = 0; r < full.rows(); ++r) model.w(r, j) = column[r];
  }
  return model;
}

ProjectionModel fit_lda(const SubbandMatrix& x, std::span<const Label> labels,
                        std::size_t components) {
  require_rows(x, 4, "fit_lda");
  if (components == 0) throw std::invalid_argument("fit_lda: components must be >= 1");
  if (labels.size() != x.x.rows()) throw std::invalid_argument("fit_lda: label count mismatch");
  const auto groups = split_by_label(labels);
  if (groups[0].empty() || groups[1].empty())
    throw std::invalid_argument("fit_lda: both classes must be present");

  const std::size_t n = x.x.rows();
  const std::size_t m = x.x.cols();
  ProjectionModel model;
  model.method = Method::lda;
  model.mean = column_means(x.x);
  const std::array<std::vector<double>, 2> means{mean_of_rows(x.x, groups[0]),
                                                 mean_of_rows(x.x, groups[1])};
  std::vector<double> diff(m);
  for (std::size_t c = 0; c < m; ++c) diff[c] = means[1][c] - means[0][c];
  // Two classes allow a single discriminant direction whatever `components` asks.

  // Scatter scaled by 1/(N-1); the direction does not depend on the scale.
  const Matrix z = within_class_centered(x.x, labels, means);
  EigenResult scatter;
  if (m <= n) {
    Matrix s = covariance(z, false);
    for (double& v : s.data()) v /= static_cast<double>(n - 1);
    scatter = sym_eigen(s);
  } else {
    scatter = principal_axes(z, n, AxesRoute::gram);
  }
  double trace = 0.0;
  for (double v : z.data()) trace += v * v;
  trace /= static_cast<double>(n - 1);
  const double shift = trace > 0.0 ? kLdaRegularization * trace / static_cast<double>(m)
                                   : kLdaRegularization;

  std::vector<double> w = solve_shifted_psd(scatter, shift, diff);
  const double len = norm2(w);
  if (!(len > 0.0) || !std::isfinite(len)) {
    // identical class means: no discriminating direction exists
    throw std::invalid_argument("fit_lda: class means coincide");
  }
  for (double& v : w) v /= len;
  if (dot(w, diff) < 0.0)
    for (double& v : w) v = -v;
  model.w = Matrix(m, 1, std::move(w));
  return model;
}

ProjectionModel fit(Method method, const SubbandMatrix& x, std::span<const Label> labels,
                    std::size_t components, std::uint64_t seed) {
  switch (method) {
    case Method::pca: return fit_pca(x, components);
    case Method::ica: return fit_ica(x, components, seed);
    case Method::lda: return fit_lda(x, labels, components);
  }
  throw std::invalid_argument("fit: unknown method");
}

Matrix transform(const ProjectionModel& model, const Matrix& x) {
  if (x.cols() != model.mean.size())
    throw std::invalid_argument("transform: expected " + std::to_string(model.mean.size()) +
                                " columns, got " + std::to_string(x.cols()));
  return center(x, model.mean) * model.w;
}

nlohmann::json to_json(const ProjectionModel& model, std::string_view mode) {
  nlohmann::json w = nlohmann::json::array();
  for (std::size_t r = 0; r < model.w.rows(); ++r) {
    auto row = model.w.row(r);
    w.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"method", method_name(model.method)},
          {"mean", model.mean},
          {"W", std::move(w)},
          {"L'", model.output_dim()},
          {"seed", model.seed},
          {"mode", std::string(mode)},
          {"converged", model.converged}};
}

LdaScoreParams fit_lda_score(const Matrix& x, std::span<const Label> labels) {
  if (labels.size() != x.rows()) throw std::invalid_argument("fit_lda_score: label count mismatch");
  const auto groups = split_by_label(labels);
  if (groups[0].empty() || groups[1].empty())
    throw std::invalid_argument("fit_lda_score: both classes must be present");
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  if (n < 3) throw std::invalid_argument("fit_lda_score: need at least 3 rows");

  LdaScoreParams p;
  p.means = {mean_of_rows(x, groups[0]), mean_of_rows(x, groups[1])};
  const Matrix z = within_class_centered(x, labels, p.means);
  p.pooled_cov = covariance(z, false);
  double trace = 0.0;
  for (double& v : p.pooled_cov.data()) v /= static_cast<double>(n - 2);
  for (std::size_t i = 0; i < m; ++i) trace += p.pooled_cov(i, i);
  if (!(trace > 0.0)) throw std::runtime_error("fit_lda_score: singular pooled covariance");
  const double shift = kLdaRegularization * trace / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) p.pooled_cov(i, i) += shift;

  const EigenResult eig = sym_eigen(p.pooled_cov);
  for (int c = 0; c < 2; ++c) {
    p.priors[c] = static_cast<double>(groups[c].size()) / static_cast<double>(n);
    p.d[c] = solve_shifted_psd(eig, 0.0, p.means[c]);
    p.d0[c] = -0.5 * dot(p.means[c], p.d[c]);
  }
  return p;
}

std::array<double, 2> lda_score(const LdaScoreParams& params, std::span<const double> x) {
  if (x.size() != params.d[0].size()) throw std::invalid_argument("lda_score: dimension mismatch");
  std::array<double, 2> s{};
  for (int c = 0; c < 2; ++c) s[c] = params.d0[c] + dot(params.d[c], x) + std::log(params.priors[c]);
  return s;
}

Label lda_score_predict(const LdaScoreParams& params, std::span<const double> x) {
  const auto s = lda_score(params, x);
  return s[1] > s[0] ? Label::positive : Label::negative;
}

}  // namespace seizure
