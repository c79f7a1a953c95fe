#pragma once

// Text emitters for evaluation results. CSV numbers carry four decimals,
// markdown mirrors two.

#include <span>
#include <string>
#include <vector>

#include "seizure/evaluate.hpp"

namespace seizure::report {

inline constexpr const char* kCsvHeader =
    "case,accuracy_pct,sensitivity_pct,specificity_pct,precision_pct,recall_pct,f_measure";

// One row per report: case label then the six metrics.
std::string table_csv(std::span<const EvalReport* const> rows);
std::string table_markdown(std::span<const EvalReport* const> rows, const std::string& title);

std::string roc_csv(const RocCurve& curve);
std::string folds_csv(const EvalReport& report);  // fold-wise confusion and accuracy
std::string confusion_text(const EvalReport& report);

// "<dimred>_<classifier>" and "<dimred>_<classifier>_<pair>"
std::string table_stem(Method m, ClassifierKind c);
std::string run_stem(const EvalReport& report);

// Rounding check: f recomputed from the row's own precision and recall must
// match the reported f at two decimals within `tolerance`.
struct FConsistency {
  std::string case_label;
  double reported_f;
  double recomputed_f;
  bool ok;
};

FConsistency check_f_consistency(const std::string& case_label, double precision_pct,
                                 double recall_pct, double reported_f, double tolerance = 0.01);

// Per-row deltas against the published tables, in markdown. With a second
// sweep run in the other fit mode, a uniform 100% seen only with faithful
// fitting is flagged as consistent with leakage.
std::string comparison_markdown(const SweepResult& result, const SweepResult* other_mode = nullptr);

// Combinations ranked by mean pooled accuracy over the evaluated pairs.
struct RankEntry {
  Method dimred;
  ClassifierKind classifier;
  double mean_accuracy;
  std::size_t pairs;
};

std::vector<RankEntry> rank_combinations(const SweepResult& result);
std::string ranking_csv(std::span<const RankEntry> ranking);

double round_to(double value, int decimals);

}  // namespace seizure::report
