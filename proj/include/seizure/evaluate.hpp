#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "seizure/classify.hpp"
#include "seizure/dataset.hpp"
#include "seizure/dimred.hpp"
#include "seizure/fusion.hpp"
#include "seizure/matrix.hpp"

namespace seizure {

// nested: reducers fitted on each training fold only.
// faithful: reducers fitted once on the whole dataset before splitting.
enum class FitMode { nested, faithful };

std::string mode_name(FitMode m);
std::optional<FitMode> parse_mode(std::string_view text);

// splitmix64 of (master, index); used for per-fold and per-subband seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// ---- folds and metrics ------------------------------------------------------

using Folds = std::vector<std::vector<std::size_t>>;  // test indices per fold, ascending

// Each class is shuffled with the seed and dealt round-robin over the folds,
// continuing across classes, so per-fold class counts stay within one of the
// ideal proportion.
Folds stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed);

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o);
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted);

enum MetricUndefined : unsigned {
  kSensitivityUndefined = 1u << 0,
  kSpecificityUndefined = 1u << 1,
  kPrecisionUndefined = 1u << 2,
  kFMeasureUndefined = 1u << 3,
};

struct MetricSet {
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  unsigned undefined = 0;  // MetricUndefined bits; such entries are reported as 0
};

MetricSet metrics(const ConfusionMatrix& cm);
double f_measure(double precision, double recall);

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), from (0,0) to (1,1)
  double auc = 0.0;
};

// Threshold sweep over distinct scores (ties share one threshold) with
// trapezoidal area.
RocCurve roc(std::span<const double> scores, std::span<const Label> labels);

// ---- experiments ------------------------------------------------------------

struct ExperimentConfig {
  Method dimred = Method::lda;
  ClassifierKind classifier = ClassifierKind::nb;
  FitMode mode = FitMode::nested;
  std::size_t feature_length = 8;  // L
  FusionWeights weights;
  MaxMode max_mode = MaxMode::elementwise;
  ClassifierParams classifier_params;
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  std::size_t subband_width = 0;  // 0 keeps every coefficient

  void validate() const;
  nlohmann::json to_json() const;
};

// Six N x M_k coefficient matrices (CD1..CD5, CA5) for a whole dataset.
struct DecomposedDataset {
  std::array<Matrix, 6> subbands;
  std::vector<Label> labels;
  Pair pair = Pair::AE;
  std::vector<std::string> warnings;

  std::size_t size() const { return labels.size(); }
};

// Records longer than the shortest one are cut to its length (with a warning).
DecomposedDataset decompose_dataset(const PairDataset& data, std::size_t subband_width = 0);

struct FoldFeatures {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  Matrix train_x;  // fused, not yet standardised
  Matrix test_x;
};

struct FeatureSet {
  std::vector<FoldFeatures> folds;
  std::size_t output_dim = 0;  // L' after fusion
  std::vector<std::string> warnings;
};

// Reduce every subband and fuse, per fold. Independent of the classifier, so
// a sweep computes it once per (pair, method).
FeatureSet build_features(const DecomposedDataset& data, const Folds& folds,
                          const ExperimentConfig& config);

struct FoldResult {
  std::size_t fold = 0;
  ConfusionMatrix cm;
  MetricSet metrics;
};

struct EvalReport {
  Pair pair = Pair::AE;
  ExperimentConfig config;
  std::vector<FoldResult> folds;
  ConfusionMatrix pooled;
  MetricSet metrics;  // from the pooled confusion matrix
  double fold_mean_accuracy = 0.0;
  RocCurve roc;
  std::size_t output_dim = 0;
  std::vector<std::string> warnings;

  nlohmann::json manifest() const;
};

EvalReport evaluate_classifier(const DecomposedDataset& data, const FeatureSet& features,
                               const ExperimentConfig& config);

EvalReport run_experiment(const PairDataset& data, const ExperimentConfig& config);
EvalReport run_experiment(const DecomposedDataset& data, const ExperimentConfig& config);

inline constexpr std::array<Method, 3> kSweepMethods{Method::ica, Method::pca, Method::lda};
inline constexpr std::array<ClassifierKind, 3> kSweepClassifiers{
    ClassifierKind::knn, ClassifierKind::svm, ClassifierKind::nb};

struct SweepFailure {
  Pair pair;
  Method dimred;
  ClassifierKind classifier;
  std::string message;
};

struct SweepResult {
  std::vector<EvalReport> reports;  // ordered by (method, classifier, pair)
  std::vector<SweepFailure> failures;

  const EvalReport* find(Pair pair, Method m, ClassifierKind c) const;
};

// All method x classifier combinations over the given pairs. Folds are shared
// across combinations of one pair. A failing cell is recorded and skipped.
SweepResult sweep(const std::vector<DecomposedDataset>& pairs, const ExperimentConfig& base);

}  // namespace seizure
