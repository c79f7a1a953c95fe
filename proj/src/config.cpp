#include "seizure/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seizure {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

template <typename T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

Pair require_pair(const std::string& text) {
  if (auto p = parse_pair(text)) return *p;
  throw ConfigError("unknown pair '" + text + "' (expected one of A-C, A-D, A-E, B-C, B-D, B-E)");
}

std::vector<Pair> require_pairs(const std::string& comma_list) {
  std::vector<Pair> out;
  for (const auto& item : split_commas(comma_list)) {
    if (item == "all") {
      out.assign(std::begin(kAllPairs), std::end(kAllPairs));
      continue;
    }
    const Pair p = require_pair(item);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  if (out.empty()) throw ConfigError("no pairs given");
  return out;
}

Method require_method(const std::string& text) {
  if (auto m = parse_method(text)) return *m;
  throw ConfigError("unknown dimred '" + text + "' (expected pca, ica or lda)");
}

ClassifierKind require_classifier(const std::string& text) {
  if (auto c = parse_classifier(text)) return *c;
  throw ConfigError("unknown classifier '" + text + "' (expected svm, nb or knn)");
}

FitMode require_mode(const std::string& text) {
  if (auto m = parse_mode(text)) return *m;
  throw ConfigError("unknown mode '" + text + "' (expected nested or faithful)");
}

MaxMode require_max_mode(const std::string& text) {
  if (auto m = parse_max_mode(text)) return *m;
  throw ConfigError("unknown max_mode '" + text + "' (expected elementwise or by_norm)");
}

KernelType require_kernel(const std::string& text) {
  if (auto k = parse_kernel(text)) return *k;
  throw ConfigError("unknown svm_kernel '" + text + "' (expected linear or rbf)");
}

OutputFormats require_formats(const std::string& comma_list) {
  OutputFormats f{false, false, false};
  for (const auto& item : split_commas(comma_list)) {
    if (item == "csv") f.csv = true;
    else if (item == "md") f.md = true;
    else if (item == "json") f.json = true;
    else throw ConfigError("unknown format '" + item + "' (expected csv, md or json)");
  }
  if (!f.csv && !f.md && !f.json) throw ConfigError("no output format given");
  return f;
}

void RunConfig::validate() const {
  if (pairs.empty()) throw ConfigError("no pairs given");
  try {
    experiment.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = experiment.to_json();
  std::vector<std::string> names;
  for (Pair p : pairs) names.push_back(pair_name(p));
  j["pairs"] = names;
  j["data_root"] = data_root ? data_root->string() : std::string();
  j["output_dir"] = output_dir.string();
  std::vector<std::string> fmts;
  if (formats.csv) fmts.push_back("csv");
  if (formats.md) fmts.push_back("md");
  if (formats.json) fmts.push_back("json");
  j["format"] = fmts;
  j["dump_subbands"] = dump_subbands;
  return j;
}

RunConfig default_run_config() {
  RunConfig c;
  if (const char* env = std::getenv(kDataRootEnv); env && *env) c.data_root = env;
  return c;
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  auto& x = c.experiment;
  for (const auto& [key, v] : j.items()) {
    if (key == "data_root") {
      const auto root = get_as<std::string>(v, key);
      if (root.empty()) c.data_root.reset();
      else c.data_root = root;
    }
    else if (key == "pair" || key == "pairs") {
      if (v.is_array()) {
        std::string joined;
        for (const auto& p : v) joined += get_as<std::string>(p, key) + ",";
        c.pairs = require_pairs(joined);
      } else {
        c.pairs = require_pairs(get_as<std::string>(v, key));
      }
    } else if (key == "dimred") x.dimred = require_method(get_as<std::string>(v, key));
    else if (key == "classifier") x.classifier = require_classifier(get_as<std::string>(v, key));
    else if (key == "mode") x.mode = require_mode(get_as<std::string>(v, key));
    else if (key == "L") x.feature_length = get_count(v, key);
    else if (key == "mu1") x.weights.mu1 = get_as<double>(v, key);
    else if (key == "mu2") x.weights.mu2 = get_as<double>(v, key);
    else if (key == "max_mode") x.max_mode = require_max_mode(get_as<std::string>(v, key));
    else if (key == "knn_k") x.classifier_params.knn_k = get_count(v, key);
    else if (key == "svm_c") x.classifier_params.svm_c = get_as<double>(v, key);
    else if (key == "svm_kernel") x.classifier_params.svm_kernel = require_kernel(get_as<std::string>(v, key));
    else if (key == "nb_var_floor") x.classifier_params.nb_var_floor = get_as<double>(v, key);
    else if (key == "folds") x.folds = get_count(v, key);
    else if (key == "seed") x.seed = get_as<std::uint64_t>(v, key);
    else if (key == "subband_width") x.subband_width = get_count(v, key);
    else if (key == "output_dir") c.output_dir = get_as<std::string>(v, key);
    else if (key == "format") {
      if (v.is_array()) {
        std::string joined;
        for (const auto& f : v) joined += get_as<std::string>(f, key) + ",";
        c.formats = require_formats(joined);
      } else {
        c.formats = require_formats(get_as<std::string>(v, key));
      }
    } else if (key == "dump_subbands") c.dump_subbands = get_as<bool>(v, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_json_file(RunConfig& config, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + file.string() + ": " + e.what());
  }
  apply_json(config, j);
}

}  // namespace seizure
