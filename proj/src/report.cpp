#include "seizure/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "seizure/reference_tables.hpp"

namespace seizure::report {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string signed_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.*f", decimals, v);
  return buf;
}

bool all_perfect(const SweepResult& s, Method m, ClassifierKind c) {
  bool any = false;
  for (const auto& r : s.reports) {
    if (r.config.dimred != m || r.config.classifier != c) continue;
    any = true;
    if (r.pooled.fp + r.pooled.fn != 0) return false;
  }
  return any;
}

}  // namespace

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

std::string table_csv(std::span<const EvalReport* const> rows) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const EvalReport* r : rows) {
    const MetricSet& m = r->metrics;
    os << pair_name(r->pair) << "," << fixed(100 * m.accuracy, 4) << ","
       << fixed(100 * m.sensitivity, 4) << "," << fixed(100 * m.specificity, 4) << ","
       << fixed(100 * m.precision, 4) << "," << fixed(100 * m.recall, 4) << ","
       << fixed(m.f_measure, 4) << "\n";
  }
  return os.str();
}

std::string table_markdown(std::span<const EvalReport* const> rows, const std::string& title) {
  std::ostringstream os;
  os << "### " << title << "\n\n"
     << "| CASE | Accuracy (%) | Sensitivity (%) | Specificity (%) | Precision (%) | Recall (%) "
        "| F-measure | Fold-mean accuracy (%) |\n"
     << "|---|---|---|---|---|---|---|---|\n";
  for (const EvalReport* r : rows) {
    const MetricSet& m = r->metrics;
    os << "| " << pair_name(r->pair) << " | " << fixed(100 * m.accuracy, 2) << " | "
       << fixed(100 * m.sensitivity, 2) << " | " << fixed(100 * m.specificity, 2) << " | "
       << fixed(100 * m.precision, 2) << " | " << fixed(100 * m.recall, 2) << " | "
       << fixed(m.f_measure, 2) << " | " << fixed(100 * r->fold_mean_accuracy, 2) << " |\n";
  }
  return os.str();
}

std::string roc_csv(const RocCurve& curve) {
  std::ostringstream os;
  os << "fpr,tpr\n";
  for (const auto& [fpr, tpr] : curve.points) os << fixed(fpr, 6) << "," << fixed(tpr, 6) << "\n";
  return os.str();
}

std::string folds_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "fold,tp,fp,fn,tn,accuracy_pct\n";
  for (const auto& f : report.folds) {
    os << f.fold << "," << f.cm.tp << "," << f.cm.fp << "," << f.cm.fn << "," << f.cm.tn << ","
       << fixed(100 * f.metrics.accuracy, 4) << "\n";
  }
  return os.str();
}

std::string confusion_text(const EvalReport& report) {
  std::ostringstream os;
  auto block = [&](const std::string& name, const ConfusionMatrix& cm) {
    os << name << "\n"
       << "                 predicted+  predicted-\n"
       << "  actual+ (" << set_letter(epileptic_member(report.pair)) << ")   " << cm.tp
       << std::string(12 - std::min<std::size_t>(11, std::to_string(cm.tp).size()), ' ') << cm.fn
       << "\n"
       << "  actual- (" << set_letter(healthy_member(report.pair)) << ")   " << cm.fp
       << std::string(12 - std::min<std::size_t>(11, std::to_string(cm.fp).size()), ' ') << cm.tn
       << "\n";
  };
  block("pooled " + pair_name(report.pair), report.pooled);
  for (const auto& f : report.folds) block("fold " + std::to_string(f.fold), f.cm);
  return os.str();
}

std::string table_stem(Method m, ClassifierKind c) {
  return method_name(m) + "_" + classifier_name(c);
}

std::string run_stem(const EvalReport& report) {
  return table_stem(report.config.dimred, report.config.classifier) + "_" + pair_name(report.pair);
}

FConsistency check_f_consistency(const std::string& case_label, double precision_pct,
                                 double recall_pct, double reported_f, double tolerance) {
  FConsistency out;
  out.case_label = case_label;
  out.reported_f = reported_f;
  out.recomputed_f = f_measure(precision_pct / 100.0, recall_pct / 100.0);
  out.ok = std::abs(round_to(out.recomputed_f, 2) - round_to(reported_f, 2)) <= tolerance + 1e-9;
  return out;
}

std::string comparison_markdown(const SweepResult& result, const SweepResult* other_mode) {
  std::ostringstream os;
  const std::string mode =
      result.reports.empty() ? "?" : mode_name(result.reports.front().config.mode);
  os << "# Comparison with published Bonn results\n\n"
     << "Fit mode: " << mode << ". Deltas are ours minus published, in percentage points "
     << "(F-measure as a fraction). `ref f ok` checks the published F-measure against its own "
        "precision and recall.\n\n";
  for (Method m : kSweepMethods) {
    for (ClassifierKind c : kSweepClassifiers) {
      const ReferenceTable& ref = reference_table(m, c);
      os << "## " << table_stem(m, c) << "\n\n"
         << "| CASE | acc ours | acc ref | d acc | d sens | d spec | d prec | d recall | d f | "
            "ref f ok |\n"
         << "|---|---|---|---|---|---|---|---|---|---|\n";
      for (const ReferenceRow& row : ref) {
        const auto consistency = check_f_consistency(pair_name(row.pair), row.precision,
                                                     row.recall, row.f_measure);
        const EvalReport* r = result.find(row.pair, m, c);
        os << "| " << pair_name(row.pair) << " | ";
        if (r) {
          const MetricSet& x = r->metrics;
          os << fixed(100 * x.accuracy, 2) << " | " << fixed(row.accuracy, 2) << " | "
             << signed_fixed(100 * x.accuracy - row.accuracy, 2) << " | "
             << signed_fixed(100 * x.sensitivity - row.sensitivity, 2) << " | "
             << signed_fixed(100 * x.specificity - row.specificity, 2) << " | "
             << signed_fixed(100 * x.precision - row.precision, 2) << " | "
             << signed_fixed(100 * x.recall - row.recall, 2) << " | "
             << signed_fixed(x.f_measure - row.f_measure, 2) << " | ";
        } else {
          os << "n/a | " << fixed(row.accuracy, 2) << " | | | | | | | ";
        }
        os << (consistency.ok ? "yes" : "no (" + fixed(consistency.recomputed_f, 3) + ")")
           << " |\n";
      }
      os << "\n";
      if (all_perfect(result, m, c)) {
        os << "All evaluated pairs reach 100% in " << mode << " mode";
        if (other_mode) {
          if (mode == "faithful" && !all_perfect(*other_mode, m, c))
            os << " but not in nested mode: consistent with leakage from fitting the reducers "
                  "on the full dataset";
          else if (mode == "nested" && all_perfect(*other_mode, m, c))
            os << " and in faithful mode";
        }
        os << ".\n\n";
      }
    }
  }
  if (!result.failures.empty()) {
    os << "## Failed runs\n\n";
    for (const auto& f : result.failures)
      os << "- " << table_stem(f.dimred, f.classifier) << " " << pair_name(f.pair) << ": "
         << f.message << "\n";
  }
  return os.str();
}

std::vector<RankEntry> rank_combinations(const SweepResult& result) {
  std::vector<RankEntry> out;
  for (Method m : kSweepMethods) {
    for (ClassifierKind c : kSweepClassifiers) {
      RankEntry e{m, c, 0.0, 0};
      for (const auto& r : result.reports) {
        if (r.config.dimred == m && r.config.classifier == c) {
          e.mean_accuracy += r.metrics.accuracy;
          ++e.pairs;
        }
      }
      if (e.pairs == 0) continue;
      e.mean_accuracy /= static_cast<double>(e.pairs);
      out.push_back(e);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
    return a.mean_accuracy > b.mean_accuracy;
  });
  return out;
}

std::string ranking_csv(std::span<const RankEntry> ranking) {
  std::ostringstream os;
  os << "rank,dimred,classifier,mean_accuracy_pct,pairs\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto& e = ranking[i];
    os << i + 1 << "," << method_name(e.dimred) << "," << classifier_name(e.classifier) << ","
       << fixed(100 * e.mean_accuracy, 4) << "," << e.pairs << "\n";
  }
  return os.str();
}

}  // namespace seizure::report
