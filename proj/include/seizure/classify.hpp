#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seizure/dataset.hpp"
#include "seizure/matrix.hpp"

namespace seizure {

// Per-feature z-scoring with statistics from the training rows.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
};

// ---- k-nearest neighbours -------------------------------------------------

struct KnnModel {
  Matrix x;
  std::vector<Label> y;
  std::size_t k = 5;
};

KnnModel knn_fit(const Matrix& x, std::span<const Label> y, std::size_t k);

// Majority vote of the k Euclidean-nearest training points. Equal votes go to
// the class with the smaller mean distance among the k, then to negative.
// Equidistant candidates are ordered by label, then by coordinates, so the
// result does not depend on training row order.
Label knn_predict(const KnnModel& model, std::span<const double> x);
double knn_score(const KnnModel& model, std::span<const double> x);  // positive vote fraction

// ---- Gaussian naive Bayes -------------------------------------------------

struct NbModel {
  std::array<std::vector<double>, 2> mean;  // indexed by Label
  std::array<std::vector<double>, 2> var;
  std::array<double, 2> log_prior{};
  double var_floor = 0.0;
};

NbModel nb_fit(const Matrix& x, std::span<const Label> y, double var_floor_factor = 1e-9);
std::array<double, 2> nb_log_joint(const NbModel& model, std::span<const double> x);
std::array<double, 2> nb_posteriors(const NbModel& model, std::span<const double> x);
Label nb_predict(const NbModel& model, std::span<const double> x);
double nb_score(const NbModel& model, std::span<const double> x);  // P(positive | x)

// ---- support vector machine -----------------------------------------------

enum class KernelType { linear, rbf };

struct Kernel {
  KernelType type = KernelType::linear;
  double gamma = 1.0;  // rbf only

  double operator()(std::span<const double> a, std::span<const double> b) const;
};

std::string kernel_name(KernelType k);
std::optional<KernelType> parse_kernel(std::string_view text);

struct SvmOptions {
  double tolerance = 1e-3;  // maximal KKT violation at stop
  // Iteration cap is passes * N * N pair updates (at least 1000).
  std::size_t passes = 10;
};

struct SvmModel {
  Matrix support_vectors;
  std::vector<double> coef;  // alpha_i * y_i for each support vector
  double bias = 0.0;
  Kernel kernel;
  double c = 1.0;
  std::vector<double> alpha;  // full dual vector over the training set
  bool converged = true;
  std::size_t iterations = 0;
};

// Sequential minimal optimisation on the soft-margin dual, using maximal-gain
// (second order) working-pair selection.
SvmModel svm_fit(const Matrix& x, std::span<const Label> y, double c, const Kernel& kernel,
                 const SvmOptions& options = {});
double svm_score(const SvmModel& model, std::span<const double> x);  // decision value
Label svm_predict(const SvmModel& model, std::span<const double> x);

// ---- uniform front end ----------------------------------------------------

enum class ClassifierKind { svm, nb, knn };

std::string classifier_name(ClassifierKind k);  // "svm" / "nb" / "knn"
std::optional<ClassifierKind> parse_classifier(std::string_view text);

struct ClassifierParams {
  std::size_t knn_k = 5;
  double svm_c = 1.0;
  KernelType svm_kernel = KernelType::linear;
  double nb_var_floor = 1e-9;
};

class Classifier {
 public:
  static Classifier train(ClassifierKind kind, const Matrix& x, std::span<const Label> y,
                          const ClassifierParams& params);

  Label predict(std::span<const double> x) const;
  // Larger means more likely positive.
  double score(std::span<const double> x) const;
  std::vector<std::string> warnings() const;

 private:
  std::variant<KnnModel, NbModel, SvmModel> model_;
};

}  // namespace seizure
