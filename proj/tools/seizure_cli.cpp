// seizure-cli: corpus checks, single runs, the full sweep and ROC/confusion
// dumps. Exit codes: 0 ok, 1 finished with warnings, 2 usage or config
// error, 3 runtime failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seizure/config.hpp"
#include "seizure/dataset.hpp"
#include "seizure/dwt.hpp"
#include "seizure/evaluate.hpp"
#include "seizure/report.hpp"
#include "seizure/synthetic.hpp"

namespace fs = std::filesystem;
using namespace seizure;

namespace {

enum Exit { kOk = 0, kWarnings = 1, kUsage = 2, kRuntime = 3 };

// Raised for failures past configuration (corpus loading, fitting, writing).
struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<std::string> config_file;
  std::optional<std::string> data_root;
  std::optional<std::string> pairs;
  std::optional<std::string> dimred;
  std::optional<std::string> classifier;
  std::optional<std::string> mode;
  std::optional<std::size_t> L;
  std::optional<double> mu1;
  std::optional<double> mu2;
  std::optional<std::string> max_mode;
  std::optional<std::size_t> knn_k;
  std::optional<double> svm_c;
  std::optional<std::string> svm_kernel;
  std::optional<std::size_t> folds;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> subband_width;
  std::optional<std::string> output_dir;
  std::optional<std::string> format;
  bool dump_subbands = false;
};

void add_run_flags(CLI::App* cmd, Flags& f, bool single_pair_default) {
  cmd->add_option("--config", f.config_file, "JSON config file (flags override it)");
  cmd->add_option("--data-root", f.data_root, "Bonn corpus root (default: $BONN_DATA_ROOT)");
  cmd->add_option("--pair,--pairs", f.pairs,
                  single_pair_default ? "Pair(s), comma separated (default A-E)"
                                      : "Pairs, comma separated or 'all' (default all)");
  cmd->add_option("--dimred", f.dimred, "pca | ica | lda (default lda)");
  cmd->add_option("--classifier", f.classifier, "svm | nb | knn (default nb)");
  cmd->add_option("--mode", f.mode, "nested | faithful (default nested)");
  cmd->add_option("-L,--length", f.L, "Components per subband (default 8)");
  cmd->add_option("--mu1", f.mu1, "Approximation weight (default 0.7)");
  cmd->add_option("--mu2", f.mu2, "Detail weight (default 0.3)");
  cmd->add_option("--max-mode", f.max_mode, "elementwise | by_norm (default elementwise)");
  cmd->add_option("--knn-k", f.knn_k, "Neighbours for knn (default 5)");
  cmd->add_option("--svm-c", f.svm_c, "SVM box constraint (default 1.0)");
  cmd->add_option("--svm-kernel", f.svm_kernel, "linear | rbf (default linear)");
  cmd->add_option("--folds", f.folds, "Cross-validation folds (default 10)");
  cmd->add_option("--seed", f.seed, "Master seed (default 42)");
  cmd->add_option("--subband-width", f.subband_width, "Keep the first N coefficients per subband (0 = all)");
  cmd->add_option("-o,--out", f.output_dir, "Output directory (default results)");
  cmd->add_option("--format", f.format, "csv,md,json (default csv)");
  cmd->add_flag("--dump-subbands", f.dump_subbands, "Write per-record subband CSVs");
}

RunConfig resolve(const Flags& f, bool single_pair_default) {
  RunConfig c = default_run_config();
  if (single_pair_default) c.pairs = {Pair::AE};
  if (f.config_file) {
    std::ifstream in(*f.config_file);
    if (!in) throw ConfigError("cannot open config file " + *f.config_file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config file " + *f.config_file + ": " + e.what());
    }
    // A manifest written by this tool replays its embedded config.
    if (j.is_object() && j.contains("config") && j.contains("runs")) j = j["config"];
    apply_json(c, j);
  }
  auto& x = c.experiment;
  if (f.data_root) c.data_root = *f.data_root;
  if (f.pairs) c.pairs = require_pairs(*f.pairs);
  if (f.dimred) x.dimred = require_method(*f.dimred);
  if (f.classifier) x.classifier = require_classifier(*f.classifier);
  if (f.mode) x.mode = require_mode(*f.mode);
  if (f.L) x.feature_length = *f.L;
  if (f.mu1) x.weights.mu1 = *f.mu1;
  if (f.mu2) x.weights.mu2 = *f.mu2;
  if (f.max_mode) x.max_mode = require_max_mode(*f.max_mode);
  if (f.knn_k) x.classifier_params.knn_k = *f.knn_k;
  if (f.svm_c) x.classifier_params.svm_c = *f.svm_c;
  if (f.svm_kernel) x.classifier_params.svm_kernel = require_kernel(*f.svm_kernel);
  if (f.folds) x.folds = *f.folds;
  if (f.seed) x.seed = *f.seed;
  if (f.subband_width) x.subband_width = *f.subband_width;
  if (f.output_dir) c.output_dir = *f.output_dir;
  if (f.format) c.formats = require_formats(*f.format);
  if (f.dump_subbands) c.dump_subbands = true;
  c.validate();
  if (!c.data_root)
    throw ConfigError(std::string("no data root: pass --data-root or set ") + kDataRootEnv);
  return c;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write " + path.string());
  out << text;
  if (!out) throw RuntimeFailure("write failed for " + path.string());
}

void prepare_output(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw RuntimeFailure("cannot create " + c.output_dir.string() + ": " + ec.message());
}

std::vector<DecomposedDataset> load_all(const RunConfig& c, std::vector<std::string>& warnings) {
  std::vector<DecomposedDataset> out;
  for (Pair p : c.pairs) {
    PairDataset data;
    try {
      data = load_pair(*c.data_root, p, &warnings);
    } catch (const std::exception& e) {
      throw RuntimeFailure(std::string("loading ") + pair_name(p) + ": " + e.what());
    }
    if (c.dump_subbands) {
      const fs::path dir = c.output_dir / ("subbands_" + pair_name(p));
      fs::create_directories(dir);
      for (const auto& rec : data.records) {
        std::ofstream os(dir / (rec.file_id + ".csv"));
        dwt::write_subbands_csv(dwt::decompose5(rec.samples), os);
      }
    }
    try {
      out.push_back(decompose_dataset(data, c.experiment.subband_width));
    } catch (const std::exception& e) {
      throw RuntimeFailure(std::string("decomposing ") + pair_name(p) + ": " + e.what());
    }
  }
  return out;
}

// Identical messages from different folds are printed once with a count.
void report_warnings(const std::vector<std::string>& warnings) {
  static const std::regex fold_tag(R"(fold \d+: )");
  std::vector<std::pair<std::string, std::size_t>> grouped;
  for (const auto& w : warnings) {
    const std::string key = std::regex_replace(w, fold_tag, "");
    auto it = std::find_if(grouped.begin(), grouped.end(),
                           [&](const auto& g) { return g.first == key; });
    if (it == grouped.end()) grouped.emplace_back(key, 1);
    else ++it->second;
  }
  for (const auto& [msg, n] : grouped) {
    std::cerr << "warning: " << msg;
    if (n > 1) std::cerr << " (x" << n << ")";
    std::cerr << "\n";
  }
}

int finish(std::vector<std::string> warnings) {
  report_warnings(warnings);
  return warnings.empty() ? kOk : kWarnings;
}

std::vector<EvalReport> run_pairs(const RunConfig& c, std::vector<std::string>& warnings) {
  std::vector<EvalReport> reports;
  for (auto& data : load_all(c, warnings)) {
    try {
      reports.push_back(run_experiment(data, c.experiment));
    } catch (const std::exception& e) {
      throw RuntimeFailure(pair_name(data.pair) + ": " + e.what());
    }
    const auto& w = reports.back().warnings;
    for (const auto& s : w) warnings.push_back(pair_name(data.pair) + ": " + s);
  }
  return reports;
}

nlohmann::json manifest(const RunConfig& c, const std::vector<EvalReport>& reports) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : reports) runs.push_back(r.manifest());
  return {{"config", c.to_json()}, {"runs", std::move(runs)}};
}

int cmd_verify(const std::optional<std::string>& root_flag, bool as_json) {
  RunConfig c = default_run_config();
  if (root_flag) c.data_root = *root_flag;
  if (!c.data_root)
    throw ConfigError(std::string("no data root: pass --data-root or set ") + kDataRootEnv);
  const CorpusReport report = verify_corpus(*c.data_root);
  if (as_json) std::cout << report.to_json().dump(2) << "\n";
  else std::cout << report.to_text();
  if (report.has_errors()) return kUsage;
  return report.has_warnings() ? kWarnings : kOk;
}

int cmd_run(const RunConfig& c) {
  prepare_output(c);
  std::vector<std::string> warnings;
  const auto reports = run_pairs(c, warnings);
  std::cout << report::kCsvHeader << "\n";
  for (const auto& r : reports) {
    const EvalReport* rows[] = {&r};
    const std::string stem = report::run_stem(r);
    const std::string csv = report::table_csv(rows);
    if (c.formats.csv) {
      write_file(c.output_dir / (stem + ".csv"), csv);
      write_file(c.output_dir / (stem + "_folds.csv"), report::folds_csv(r));
    }
    if (c.formats.md)
      write_file(c.output_dir / (stem + ".md"), report::table_markdown(rows, stem));
    if (c.formats.json) write_file(c.output_dir / (stem + ".json"), r.manifest().dump(2) + "\n");
    std::cout << csv.substr(csv.find('\n') + 1);
  }
  write_file(c.output_dir / "manifest.json", manifest(c, reports).dump(2) + "\n");
  return finish(warnings);
}

int cmd_roc(const RunConfig& c) {
  prepare_output(c);
  std::vector<std::string> warnings;
  const auto reports = run_pairs(c, warnings);
  for (const auto& r : reports) {
    const fs::path path = c.output_dir / (report::run_stem(r) + "_roc.csv");
    write_file(path, report::roc_csv(r.roc));
    char auc[32];
    std::snprintf(auc, sizeof auc, "%.4f", r.roc.auc);
    std::cout << pair_name(r.pair) << " auc=" << auc << " -> " << path.string() << "\n";
  }
  return finish(warnings);
}

int cmd_confusion(const RunConfig& c) {
  prepare_output(c);
  std::vector<std::string> warnings;
  const auto reports = run_pairs(c, warnings);
  for (const auto& r : reports) {
    const std::string text = report::confusion_text(r);
    write_file(c.output_dir / (report::run_stem(r) + "_confusion.txt"), text);
    std::cout << text;
  }
  return finish(warnings);
}

int cmd_sweep(const RunConfig& c, bool both_modes) {
  prepare_output(c);
  std::vector<std::string> warnings;
  const auto data = load_all(c, warnings);
  const SweepResult result = sweep(data, c.experiment);
  std::optional<SweepResult> other;
  if (both_modes) {
    ExperimentConfig alt = c.experiment;
    alt.mode = alt.mode == FitMode::nested ? FitMode::faithful : FitMode::nested;
    other = sweep(data, alt);
  }

  for (Method m : kSweepMethods) {
    for (ClassifierKind k : kSweepClassifiers) {
      std::vector<const EvalReport*> rows;
      for (const auto& r : result.reports)
        if (r.config.dimred == m && r.config.classifier == k) rows.push_back(&r);
      const std::string stem = report::table_stem(m, k);
      if (c.formats.csv) write_file(c.output_dir / (stem + ".csv"), report::table_csv(rows));
      if (c.formats.md)
        write_file(c.output_dir / (stem + ".md"), report::table_markdown(rows, stem));
    }
  }
  const auto ranking = report::rank_combinations(result);
  write_file(c.output_dir / "summary_ranking.csv", report::ranking_csv(ranking));
  write_file(c.output_dir / "comparison.md",
             report::comparison_markdown(result, other ? &*other : nullptr));
  write_file(c.output_dir / "manifest.json", manifest(c, result.reports).dump(2) + "\n");
  if (c.formats.json) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& r : result.reports) all.push_back(r.manifest());
    write_file(c.output_dir / "sweep.json", all.dump(2) + "\n");
  }

  std::cout << report::ranking_csv(ranking);
  // Feature warnings repeat for every classifier sharing the features.
  std::vector<std::string> seen;
  for (const auto& r : result.reports) {
    for (const auto& w : r.warnings) {
      const std::string key = method_name(r.config.dimred) + "_" + pair_name(r.pair) + ": " + w;
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      warnings.push_back(key);
    }
  }
  for (const auto& f : result.failures) {
    std::cerr << "error: " << report::table_stem(f.dimred, f.classifier) << "_"
              << pair_name(f.pair) << ": " << f.message << "\n";
  }
  report_warnings(warnings);
  if (!result.failures.empty()) return kRuntime;
  return warnings.empty() ? kOk : kWarnings;
}

int cmd_synth(const std::string& out, const SyntheticOptions& options) {
  write_synthetic_corpus(out, options);
  std::cout << "wrote 5 sets of " << options.per_set << " records to " << out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG seizure detection: wavelet subbands, PCA/ICA/LDA, SVM/NB/KNN"};
  app.require_subcommand(1);

  std::optional<std::string> verify_root;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Check the corpus layout and record shapes");
  verify->add_option("--data-root", verify_root, "Bonn corpus root (default: $BONN_DATA_ROOT)");
  verify->add_flag("--json", verify_json, "Print the report as JSON");

  Flags run_flags, roc_flags, confusion_flags, sweep_flags;
  auto* run = app.add_subcommand("run", "Cross-validate one configuration");
  add_run_flags(run, run_flags, true);
  auto* roc = app.add_subcommand("roc", "Write the ROC point list of one configuration");
  add_run_flags(roc, roc_flags, true);
  auto* conf = app.add_subcommand("confusion", "Print pooled and per-fold confusion matrices");
  add_run_flags(conf, confusion_flags, true);
  auto* sw = app.add_subcommand("sweep", "All reducer x classifier combinations over the pairs");
  add_run_flags(sw, sweep_flags, false);
  bool both_modes = false;
  sw->add_flag("--both-modes", both_modes,
               "Also run the other fit mode to flag results that only hold in faithful mode");

  std::string synth_out;
  SyntheticOptions synth_options;
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus in the Bonn layout");
  synth->add_option("-o,--out", synth_out, "Output root")->required();
  synth->add_option("--per-set", synth_options.per_set, "Records per set");
  synth->add_option("--length", synth_options.length, "Samples per record (multiple of 32)");
  synth->add_option("--seed", synth_options.seed, "Generator seed");
  synth->add_option("--noise", synth_options.noise, "White-noise standard deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(verify_root, verify_json);
    if (*run) return cmd_run(resolve(run_flags, true));
    if (*roc) return cmd_roc(resolve(roc_flags, true));
    if (*conf) return cmd_confusion(resolve(confusion_flags, true));
    if (*sw) return cmd_sweep(resolve(sweep_flags, false), both_modes);
    if (*synth) return cmd_synth(synth_out, synth_options);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
