#pragma once

// Run configuration shared by the command-line subcommands. Values come from
// built-in defaults, then an optional JSON file, then explicit flags.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seizure/dataset.hpp"
#include "seizure/evaluate.hpp"

namespace seizure {

inline constexpr const char* kDataRootEnv = "BONN_DATA_ROOT";

// Bad user-supplied configuration (maps to the usage exit code).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OutputFormats {
  bool csv = true;
  bool md = false;
  bool json = false;
};

struct RunConfig {
  std::optional<std::filesystem::path> data_root;
  std::vector<Pair> pairs{std::begin(kAllPairs), std::end(kAllPairs)};
  ExperimentConfig experiment;
  std::filesystem::path output_dir = "results";
  OutputFormats formats;
  bool dump_subbands = false;

  // Throws ConfigError naming the offending field.
  void validate() const;
  nlohmann::json to_json() const;
};

// Defaults, with the data root taken from BONN_DATA_ROOT when it is set.
RunConfig default_run_config();

// Overlays the keys present in `j` onto `config`. Unknown keys and values of
// the wrong type or outside their enum are rejected.
void apply_json(RunConfig& config, const nlohmann::json& j);
void apply_json_file(RunConfig& config, const std::filesystem::path& file);

// Parsers that throw ConfigError on bad text.
Pair require_pair(const std::string& text);
std::vector<Pair> require_pairs(const std::string& comma_list);
Method require_method(const std::string& text);
ClassifierKind require_classifier(const std::string& text);
FitMode require_mode(const std::string& text);
MaxMode require_max_mode(const std::string& text);
KernelType require_kernel(const std::string& text);
OutputFormats require_formats(const std::string& comma_list);

}  // namespace seizure
