#include "seizure/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace seizure {

namespace {

void check_training_set(const Matrix& x, std::span<const Label> y, const char* who) {
  if (x.rows() == 0) throw std::invalid_argument(std::string(who) + ": empty training set");
  if (x.cols() == 0) throw std::invalid_argument(std::string(who) + ": zero features");
  if (y.size() != x.rows()) throw std::invalid_argument(std::string(who) + ": label count mismatch");
}

void require_both_classes(std::span<const Label> y, const char* who) {
  const bool has_pos = std::find(y.begin(), y.end(), Label::positive) != y.end();
  const bool has_neg = std::find(y.begin(), y.end(), Label::negative) != y.end();
  if (!has_pos || !has_neg)
    throw std::invalid_argument(std::string(who) + ": both classes must be present");
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

struct Neighbour {
  double dist;
  Label label;
  std::size_t row;
};

std::vector<Neighbour> nearest(const KnnModel& model, std::span<const double> x) {
  if (x.size() != model.x.cols()) throw std::invalid_argument("knn: dimension mismatch");
  std::vector<Neighbour> all(model.x.rows());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = {squared_distance(model.x.row(i), x), model.y[i], i};
  auto order = [&](const Neighbour& a, const Neighbour& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.label != b.label) return a.label < b.label;
    auto ra = model.x.row(a.row);
    auto rb = model.x.row(b.row);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(model.k), all.end(),
                    order);
  all.resize(model.k);
  return all;
}

}  // namespace

Standardizer Standardizer::fit(const Matrix& x) {
  Standardizer s;
  s.mean = column_means(x);
  s.scale.assign(x.cols(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const double d = x(r, c) - s.mean[c];
      s.scale[c] += d * d;
    }
  for (double& v : s.scale) {
    v = std::sqrt(v / static_cast<double>(std::max<std::size_t>(x.rows(), 1)));
    if (!(v > 1e-12)) v = 1.0;
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& x) const {
  if (x.cols() != mean.size()) throw std::invalid_argument("Standardizer: dimension mismatch");
  Matrix out = x;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < out.cols(); ++c) row[c] = (row[c] - mean[c]) / scale[c];
  }
  return out;
}

// ---- knn ------------------------------------------------------------------

KnnModel knn_fit(const Matrix& x, std::span<const Label> y, std::size_t k) {
  check_training_set(x, y, "knn_fit");
  if (k == 0 || k > x.rows())
    throw std::invalid_argument("knn_fit: k must be in [1, " + std::to_string(x.rows()) + "]");
  return {x, std::vector<Label>(y.begin(), y.end()), k};
}

Label knn_predict(const KnnModel& model, std::span<const double> x) {
  const auto nn = nearest(model, x);
  std::array<std::size_t, 2> votes{};
  std::array<double, 2> dist_sum{};
  for (const auto& n : nn) {
    votes[static_cast<int>(n.label)]++;
    dist_sum[static_cast<int>(n.label)] += std::sqrt(n.dist);
  }
  if (votes[1] != votes[0]) return votes[1] > votes[0] ? Label::positive : Label::negative;
  const double mean_pos = dist_sum[1] / static_cast<double>(votes[1]);
  const double mean_neg = dist_sum[0] / static_cast<double>(votes[0]);
  return mean_pos < mean_neg ? Label::positive : Label::negative;
}

double knn_score(const KnnModel& model, std::span<const double> x) {
  const auto nn = nearest(model, x);
  const auto pos = std::count_if(nn.begin(), nn.end(),
                                 [](const Neighbour& n) { return n.label == Label::positive; });
  return static_cast<double>(pos) / static_cast<double>(nn.size());
}

// ---- naive Bayes ------------------------------------------------------------

NbModel nb_fit(const Matrix& x, std::span<const Label> y, double var_floor_factor) {
  check_training_set(x, y, "nb_fit");
  require_both_classes(y, "nb_fit");
  const std::size_t m = x.cols();
  NbModel model;
  std::array<std::size_t, 2> counts{};
  for (int c = 0; c < 2; ++c) {
    model.mean[c].assign(m, 0.0);
    model.var[c].assign(m, 0.0);
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const int c = static_cast<int>(y[r]);
    counts[c]++;
    for (std::size_t j = 0; j < m; ++j) model.mean[c][j] += x(r, j);
  }
  for (int c = 0; c < 2; ++c)
    for (double& v : model.mean[c]) v /= static_cast<double>(counts[c]);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const int c = static_cast<int>(y[r]);
    for (std::size_t j = 0; j < m; ++j) {
      const double d = x(r, j) - model.mean[c][j];
      model.var[c][j] += d * d;
    }
  }

  double max_var = 0.0;
  const auto overall_mean = column_means(x);
  for (std::size_t j = 0; j < m; ++j) {
    double v = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const double d = x(r, j) - overall_mean[j];
      v += d * d;
    }
    max_var = std::max(max_var, v / static_cast<double>(x.rows()));
  }
  model.var_floor = max_var > 0.0 ? var_floor_factor * max_var : var_floor_factor;
  const double n = static_cast<double>(x.rows());
  for (int c = 0; c < 2; ++c) {
    for (double& v : model.var[c]) v = std::max(v / static_cast<double>(counts[c]), model.var_floor);
    model.log_prior[c] = std::log(static_cast<double>(counts[c]) / n);
  }
  return model;
}

std::array<double, 2> nb_log_joint(const NbModel& model, std::span<const double> x) {
  if (x.size() != model.mean[0].size()) throw std::invalid_argument("nb: dimension mismatch");
  constexpr double kLog2Pi = 1.8378770664093454836;
  std::array<double, 2> out{};
  for (int c = 0; c < 2; ++c) {
    double s = model.log_prior[c];
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - model.mean[c][j];
      s -= 0.5 * (kLog2Pi + std::log(model.var[c][j]) + d * d / model.var[c][j]);
    }
    out[c] = s;
  }
  return out;
}

std::array<double, 2> nb_posteriors(const NbModel& model, std::span<const double> x) {
  const auto lj = nb_log_joint(model, x);
  const double top = std::max(lj[0], lj[1]);
  const double e0 = std::exp(lj[0] - top);
  const double e1 = std::exp(lj[1] - top);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

Label nb_predict(const NbModel& model, std::span<const double> x) {
  const auto lj = nb_log_joint(model, x);
  return lj[1] > lj[0] ? Label::positive : Label::negative;
}

double nb_score(const NbModel& model, std::span<const double> x) {
  return nb_posteriors(model, x)[1];
}

// ---- svm ----------------------------------------------------------------------

double Kernel::operator()(std::span<const double> a, std::span<const double> b) const {
  if (type == KernelType::linear) return dot(a, b);
  return std::exp(-gamma * squared_distance(a, b));
}

std::string kernel_name(KernelType k) { return k == KernelType::linear ? "linear" : "rbf"; }

std::optional<KernelType> parse_kernel(std::string_view text) {
  if (text == "linear") return KernelType::linear;
  if (text == "rbf") return KernelType::rbf;
  return std::nullopt;
}

SvmModel svm_fit(const Matrix& x, std::span<const Label> labels, double c, const Kernel& kernel,
                 const SvmOptions& options) {
  check_training_set(x, labels, "svm_fit");
  require_both_classes(labels, "svm_fit");
  if (!(c > 0.0)) throw std::invalid_argument("svm_fit: C must be positive");

  const std::size_t n = x.rows();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = to_sign(labels[i]);

  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) k(i, j) = k(j, i) = kernel(x.row(i), x.row(j));

  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha - e
  auto in_up = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0.0);
  };
  auto in_low = [&](std::size_t t) {
    return (y[t] > 0 && alpha[t] > 0.0) || (y[t] < 0 && alpha[t] < c);
  };
  constexpr double kTau = 1e-12;

  SvmModel model;
  model.kernel = kernel;
  model.c = c;
  const std::size_t max_iter = std::max<std::size_t>(1000, options.passes * n * n);
  model.converged = false;
  while (model.iterations < max_iter) {
    // i: maximal violator from I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t)
      if (in_up(t) && -y[t] * grad[t] > gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    double gmin = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    double best_gain = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      const double v = -y[t] * grad[t];
      gmin = std::min(gmin, v);
      if (i == n) continue;
      const double b = gmax - v;
      if (b > 0.0) {
        double a = k(i, i) + k(t, t) - 2.0 * k(i, t);
        if (a <= 0.0) a = kTau;
        const double gain = -(b * b) / a;
        if (gain < best_gain) {
          best_gain = gain;
          j = t;
        }
      }
    }
    if (i == n || j == n || gmax - gmin < options.tolerance) {
      model.converged = true;
      break;
    }
    ++model.iterations;

    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = k(i, i) + k(j, j) - 2.0 * k(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t)
      grad[t] += y[t] * (y[i] * k(t, i) * dai + y[j] * k(t, j) * daj);
  }

  // Offset: mean over free vectors, else midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    const bool at_upper = alpha[t] >= c;
    const bool at_lower = alpha[t] <= 0.0;
    if (at_upper) {
      if (y[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (at_lower) {
      if (y[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
  model.bias = -rho;

  std::vector<std::size_t> sv;
  for (std::size_t t = 0; t < n; ++t)
    if (alpha[t] > 0.0) sv.push_back(t);
  model.support_vectors = x.select_rows(sv);
  model.coef.reserve(sv.size());
  for (std::size_t t : sv) model.coef.push_back(alpha[t] * y[t]);
  model.alpha = std::move(alpha);
  return model;
}

double svm_score(const SvmModel& model, std::span<const double> x) {
  if (model.support_vectors.rows() > 0 && x.size() != model.support_vectors.cols())
    throw std::invalid_argument("svm: dimension mismatch");
  double f = model.bias;
  for (std::size_t i = 0; i < model.coef.size(); ++i)
    f += model.coef[i] * model.kernel(model.support_vectors.row(i), x);
  return f;
}

Label svm_predict(const SvmModel& model, std::span<const double> x) {
  return svm_score(model, x) > 0.0 ? Label::positive : Label::negative;
}

// ---- front end --------------------------------------------------------------

std::string classifier_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::svm: return "svm";
    case ClassifierKind::nb: return "nb";
    case ClassifierKind::knn: return "knn";
  }
  return "?";
}

std::optional<ClassifierKind> parse_classifier(std::string_view text) {
  for (auto k : {ClassifierKind::svm, ClassifierKind::nb, ClassifierKind::knn}) {
    const std::string name = classifier_name(k);
    if (text.size() == name.size() &&
        std::equal(text.begin(), text.end(), name.begin(),
                   [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == b; }))
      return k;
  }
  return std::nullopt;
}

Classifier Classifier::train(ClassifierKind kind, const Matrix& x, std::span<const Label> y,
                             const ClassifierParams& params) {
  Classifier out;
  switch (kind) {
    case ClassifierKind::knn:
      out.model_ = knn_fit(x, y, std::min(params.knn_k, x.rows()));
      break;
    case ClassifierKind::nb:
      out.model_ = nb_fit(x, y, params.nb_var_floor);
      break;
    case ClassifierKind::svm: {
      Kernel kernel;
      kernel.type = params.svm_kernel;
      if (kernel.type == KernelType::rbf) {
        // gamma = 1 / (L * mean feature variance)
        const auto mean = column_means(x);
        double var = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r)
          for (std::size_t c = 0; c < x.cols(); ++c) var += (x(r, c) - mean[c]) * (x(r, c) - mean[c]);
        var /= static_cast<double>(x.rows() * x.cols());
        kernel.gamma = var > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * var) : 1.0;
      }
      out.model_ = svm_fit(x, y, params.svm_c, kernel);
      break;
    }
  }
  return out;
}

Label Classifier::predict(std::span<const double> x) const {
  return std::visit(
      [&](const auto& m) -> Label {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KnnModel>) return knn_predict(m, x);
        else if constexpr (std::is_same_v<T, NbModel>) return nb_predict(m, x);
        else return svm_predict(m, x);
      },
      model_);
}

double Classifier::score(std::span<const double> x) const {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, KnnModel>) return knn_score(m, x);
        else if constexpr (std::is_same_v<T, NbModel>) return nb_score(m, x);
        else return svm_score(m, x);
      },
      model_);
}

std::vector<std::string> Classifier::warnings() const {
  if (const auto* svm = std::get_if<SvmModel>(&model_); svm && !svm->converged)
    return {"svm: iteration cap reached before KKT tolerance"};
  return {};
}

}  // namespace seizure
