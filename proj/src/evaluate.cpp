#include "seizure/evaluate.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <tuple>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "seizure/dwt.hpp"

namespace seizure {

namespace {

// Unbiased draw from [0, bound) by rejection; avoids the library-specific
// behaviour of std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = 0;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

double safe_ratio(std::size_t num, std::size_t den, unsigned flag, unsigned& undefined) {
  if (den == 0) {
    undefined |= flag;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

nlohmann::json cm_json(const ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

nlohmann::json metrics_json(const MetricSet& m) {
  return {{"accuracy", m.accuracy},   {"sensitivity", m.sensitivity},
          {"specificity", m.specificity}, {"precision", m.precision},
          {"recall", m.recall},       {"f_measure", m.f_measure},
          {"undefined_flags", m.undefined}};
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& sorted_test) {
  std::vector<std::size_t> out;
  out.reserve(n - sorted_test.size());
  std::size_t t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (t < sorted_test.size() && sorted_test[t] == i) {
      ++t;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

std::vector<Label> pick(const std::vector<Label>& labels, const std::vector<std::size_t>& idx) {
  std::vector<Label> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(labels[i]);
  return out;
}

// Reduce each subband with models fitted on `fit_rows`, then fuse. Returns the
// fused features for `apply_rows`.
Matrix reduce_and_fuse(const DecomposedDataset& data, const std::vector<std::size_t>& fit_rows,
                       const std::vector<std::size_t>& apply_rows, const ExperimentConfig& config,
                       std::uint64_t seed, std::vector<std::string>& warnings) {
  const auto fit_labels = pick(data.labels, fit_rows);
  std::array<Matrix, 6> features;
  for (std::size_t s = 0; s < 6; ++s) {
    SubbandMatrix sm{dwt::kAllSubbands[s], data.subbands[s].select_rows(fit_rows)};
    ProjectionModel model =
        fit(config.dimred, sm, fit_labels, config.feature_length, derive_seed(seed, s));
    for (const auto& w : model.warnings) warnings.push_back(dwt::subband_name(sm.id) + ": " + w);
    features[s] = transform(model, data.subbands[s].select_rows(apply_rows));
  }
  return fuse_features(features, config.weights, config.max_mode);
}

}  // namespace

std::string mode_name(FitMode m) { return m == FitMode::nested ? "nested" : "faithful"; }

std::optional<FitMode> parse_mode(std::string_view text) {
  if (text == "nested") return FitMode::nested;
  if (text == "faithful") return FitMode::faithful;
  return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Folds stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<int>(labels[i])].push_back(i);
  for (const auto& members : by_class) {
    if (members.size() < k)
      throw std::invalid_argument("stratified_kfold: class with " + std::to_string(members.size()) +
                                  " members is smaller than k=" + std::to_string(k));
  }

  std::mt19937_64 rng(seed);
  Folds folds(k);
  std::size_t slot = 0;
  for (auto& members : by_class) {
    for (std::size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[bounded(rng, i)]);
    for (std::size_t idx : members) folds[slot++ % k].push_back(idx);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  return *this;
}

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) throw std::invalid_argument("confusion: length mismatch");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool t = truth[i] == Label::positive;
    const bool p = predicted[i] == Label::positive;
    if (t && p) ++cm.tp;
    else if (!t && p) ++cm.fp;
    else if (t && !p) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

double f_measure(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

MetricSet metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("metrics: empty confusion matrix");
  MetricSet m;
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  m.sensitivity = safe_ratio(cm.tp, cm.tp + cm.fn, kSensitivityUndefined, m.undefined);
  m.recall = m.sensitivity;
  m.specificity = safe_ratio(cm.tn, cm.tn + cm.fp, kSpecificityUndefined, m.undefined);
  m.precision = safe_ratio(cm.tp, cm.tp + cm.fp, kPrecisionUndefined, m.undefined);
  if (m.precision + m.recall > 0.0) {
    m.f_measure = f_measure(m.precision, m.recall);
  } else {
    m.undefined |= kFMeasureUndefined;
  }
  return m;
}

RocCurve roc(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("roc: length mismatch");
  std::size_t pos = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!std::isfinite(scores[i])) throw std::invalid_argument("roc: non-finite score");
    if (labels[i] == Label::positive) ++pos;
  }
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw std::invalid_argument("roc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.emplace_back(0.0, 0.0);
  std::size_t tp = 0;
  std::size_t fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    const std::size_t prev_tp = tp;
    const std::size_t prev_fp = fp;
    while (i < order.size() && scores[order[i]] == threshold) {
      if (labels[order[i]] == Label::positive) ++tp;
      else ++fp;
      ++i;
    }
    area += static_cast<double>(fp - prev_fp) * static_cast<double>(tp + prev_tp) / 2.0;
    curve.points.emplace_back(static_cast<double>(fp) / static_cast<double>(neg),
                              static_cast<double>(tp) / static_cast<double>(pos));
  }
  curve.auc = area / (static_cast<double>(pos) * static_cast<double>(neg));
  return curve;
}

void ExperimentConfig::validate() const {
  if (feature_length < 1) throw std::invalid_argument("L must be >= 1");
  if (folds < 2) throw std::invalid_argument("folds must be >= 2");
  weights.validate();
  if (classifier_params.knn_k < 1) throw std::invalid_argument("knn_k must be >= 1");
  if (!(classifier_params.svm_c > 0.0)) throw std::invalid_argument("svm_c must be positive");
  if (!(classifier_params.nb_var_floor > 0.0))
    throw std::invalid_argument("nb_var_floor must be positive");
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"dimred", method_name(dimred)},
          {"classifier", classifier_name(classifier)},
          {"mode", mode_name(mode)},
          {"L", feature_length},
          {"mu1", weights.mu1},
          {"mu2", weights.mu2},
          {"max_mode", max_mode_name(max_mode)},
          {"knn_k", classifier_params.knn_k},
          {"svm_c", classifier_params.svm_c},
          {"svm_kernel", kernel_name(classifier_params.svm_kernel)},
          {"nb_var_floor", classifier_params.nb_var_floor},
          {"folds", folds},
          {"seed", seed},
          {"subband_width", subband_width}};
}

DecomposedDataset decompose_dataset(const PairDataset& data, std::size_t subband_width) {
  if (data.records.empty()) throw std::invalid_argument("decompose_dataset: empty dataset");
  if (data.labels.size() != data.records.size())
    throw std::invalid_argument("decompose_dataset: label count mismatch");
  DecomposedDataset out;
  out.pair = data.pair;
  out.labels = data.labels;

  std::size_t len = data.records[0].samples.size();
  std::size_t longest = len;
  for (const auto& r : data.records) {
    len = std::min(len, r.samples.size());
    longest = std::max(longest, r.samples.size());
  }
  if (longest != len)
    out.warnings.push_back("records cut to the shortest length " + std::to_string(len));

  const auto levels = dwt::level_lengths_for(len);
  std::array<std::size_t, 6> widths{};
  for (std::size_t s = 0; s < 5; ++s) widths[s] = levels[s];
  widths[5] = levels[4];
  for (auto& w : widths)
    if (subband_width > 0) w = std::min(w, subband_width);
  const std::size_t n = data.records.size();
  for (std::size_t s = 0; s < 6; ++s) out.subbands[s] = Matrix(n, widths[s]);

  for (std::size_t r = 0; r < n; ++r) {
    const auto& samples = data.records[r].samples;
    const auto bands = dwt::decompose5(std::span<const double>(samples.data(), len));
    for (std::size_t s = 0; s < 6; ++s) {
      const auto& band = bands.band(dwt::kAllSubbands[s]);
      std::copy_n(band.begin(), widths[s], out.subbands[s].row(r).begin());
    }
  }
  return out;
}

FeatureSet build_features(const DecomposedDataset& data, const Folds& folds,
                          const ExperimentConfig& config) {
  FeatureSet out;
  const std::size_t n = data.size();
  out.folds.resize(folds.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    out.folds[f].test = folds[f];
    out.folds[f].train = complement(n, folds[f]);
  }

  if (config.mode == FitMode::faithful) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    const Matrix fused = reduce_and_fuse(data, all, all, config,
                                         derive_seed(config.seed, folds.size()), out.warnings);
    out.output_dim = fused.cols();
    for (auto& fold : out.folds) {
      fold.train_x = fused.select_rows(fold.train);
      fold.test_x = fused.select_rows(fold.test);
    }
    return out;
  }

  for (std::size_t f = 0; f < folds.size(); ++f) {
    auto& fold = out.folds[f];
    try {
      std::vector<std::size_t> rows = fold.train;
      rows.insert(rows.end(), fold.test.begin(), fold.test.end());
      std::vector<std::string> fold_warnings;
      const Matrix fused =
          reduce_and_fuse(data, fold.train, rows, config, derive_seed(config.seed, f), fold_warnings);
      for (auto& w : fold_warnings) out.warnings.push_back("fold " + std::to_string(f) + ": " + w);
      std::vector<std::size_t> head(fold.train.size());
      std::iota(head.begin(), head.end(), std::size_t{0});
      std::vector<std::size_t> tail(fold.test.size());
      std::iota(tail.begin(), tail.end(), fold.train.size());
      fold.train_x = fused.select_rows(head);
      fold.test_x = fused.select_rows(tail);
      if (f == 0) out.output_dim = fused.cols();
      else if (fused.cols() != out.output_dim)
        out.warnings.push_back("fold " + std::to_string(f) + ": feature length " +
                               std::to_string(fused.cols()) + " differs from fold 0");
    } catch (const std::exception& e) {
      throw std::runtime_error("fold " + std::to_string(f) + ": " + e.what());
    }
  }
  return out;
}

EvalReport evaluate_classifier(const DecomposedDataset& data, const FeatureSet& features,
                               const ExperimentConfig& config) {
  EvalReport report;
  report.pair = data.pair;
  report.config = config;
  report.output_dim = features.output_dim;
  report.warnings = data.warnings;
  report.warnings.insert(report.warnings.end(), features.warnings.begin(), features.warnings.end());

  const std::size_t n = data.size();
  std::vector<double> scores(n, 0.0);
  double accuracy_sum = 0.0;
  for (std::size_t f = 0; f < features.folds.size(); ++f) {
    const auto& fold = features.folds[f];
    try {
      const auto train_y = pick(data.labels, fold.train);
      const auto test_y = pick(data.labels, fold.test);
      const Standardizer scaler = Standardizer::fit(fold.train_x);
      const Matrix train_x = scaler.apply(fold.train_x);
      const Matrix test_x = scaler.apply(fold.test_x);
      const Classifier clf =
          Classifier::train(config.classifier, train_x, train_y, config.classifier_params);
      for (const auto& w : clf.warnings())
        report.warnings.push_back("fold " + std::to_string(f) + ": " + w);

      std::vector<Label> predicted(test_y.size());
      for (std::size_t i = 0; i < test_y.size(); ++i) {
        predicted[i] = clf.predict(test_x.row(i));
        scores[fold.test[i]] = clf.score(test_x.row(i));
      }
      FoldResult result;
      result.fold = f;
      result.cm = confusion(test_y, predicted);
      result.metrics = metrics(result.cm);
      report.pooled += result.cm;
      accuracy_sum += result.metrics.accuracy;
      report.folds.push_back(result);
    } catch (const std::exception& e) {
      throw std::runtime_error("fold " + std::to_string(f) + ": " + e.what());
    }
  }
  report.metrics = metrics(report.pooled);
  report.fold_mean_accuracy = accuracy_sum / static_cast<double>(features.folds.size());
  report.roc = roc(scores, data.labels);
  return report;
}

EvalReport run_experiment(const DecomposedDataset& data, const ExperimentConfig& config) {
  config.validate();
  const Folds folds = stratified_kfold(data.labels, config.folds, config.seed);
  const FeatureSet features = build_features(data, folds, config);
  return evaluate_classifier(data, features, config);
}

EvalReport run_experiment(const PairDataset& data, const ExperimentConfig& config) {
  config.validate();
  return run_experiment(decompose_dataset(data, config.subband_width), config);
}

nlohmann::json EvalReport::manifest() const {
  nlohmann::json folds_json = nlohmann::json::array();
  for (const auto& f : folds) {
    nlohmann::json entry = cm_json(f.cm);
    entry["fold"] = f.fold;
    entry["accuracy"] = f.metrics.accuracy;
    folds_json.push_back(std::move(entry));
  }
  nlohmann::json out = config.to_json();
  out["pair"] = pair_name(pair);
  out["boundary_policy"] = std::string(dwt::kBoundaryPolicy);
  out["wavelet"] = "haar";
  out["levels"] = dwt::kLevels;
  out["output_dim"] = output_dim;
  out["pooled"] = cm_json(pooled);
  out["metrics"] = metrics_json(metrics);
  out["fold_mean_accuracy"] = fold_mean_accuracy;
  out["auc"] = roc.auc;
  out["folds_detail"] = std::move(folds_json);
  out["warnings"] = warnings;
  return out;
}

const EvalReport* SweepResult::find(Pair pair, Method m, ClassifierKind c) const {
  for (const auto& r : reports)
    if (r.pair == pair && r.config.dimred == m && r.config.classifier == c) return &r;
  return nullptr;
}

SweepResult sweep(const std::vector<DecomposedDataset>& pairs, const ExperimentConfig& base) {
  base.validate();
  SweepResult result;
  for (Method m : kSweepMethods) {
    for (const auto& data : pairs) {
      ExperimentConfig config = base;
      config.dimred = m;
      FeatureSet features;
      Folds folds;
      try {
        folds = stratified_kfold(data.labels, config.folds, config.seed);
        features = build_features(data, folds, config);
      } catch (const std::exception& e) {
        for (ClassifierKind c : kSweepClassifiers)
          result.failures.push_back({data.pair, m, c, e.what()});
        continue;
      }
      for (ClassifierKind c : kSweepClassifiers) {
        config.classifier = c;
        try {
          result.reports.push_back(evaluate_classifier(data, features, config));
        } catch (const std::exception& e) {
          result.failures.push_back({data.pair, m, c, e.what()});
        }
      }
    }
  }
  auto key = [](const EvalReport& r) {
    const auto mi = std::find(kSweepMethods.begin(), kSweepMethods.end(), r.config.dimred) -
                    kSweepMethods.begin();
    const auto ci = std::find(kSweepClassifiers.begin(), kSweepClassifiers.end(),
                              r.config.classifier) -
                    kSweepClassifiers.begin();
    return std::tuple(mi, ci, static_cast<int>(r.pair));
  };
  std::stable_sort(result.reports.begin(), result.reports.end(),
                   [&](const EvalReport& a, const EvalReport& b) { return key(a) < key(b); });
  return result;
}

}  // namespace seizure
