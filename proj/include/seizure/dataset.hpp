#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace seizure {

// The five Bonn recording sets. Each has a letter name (A..E) and the
// letter used in the distributed file names (Z, O, N, F, S).
enum class BonnSet { A, B, C, D, E };

inline constexpr std::size_t kExpectedRecordsPerSet = 100;
inline constexpr std::size_t kExpectedSamplesPerRecord = 4097;  // 173.61 Hz x 23.6 s

char set_letter(BonnSet set);        // 'A'..'E'
char set_file_letter(BonnSet set);   // 'Z','O','N','F','S'
std::string set_name(BonnSet set);   // "A/Z", ...
std::optional<BonnSet> parse_set(std::string_view text);  // accepts A..E or Z/O/N/F/S, any case
bool is_epileptic(BonnSet set);

enum class Label : unsigned char { negative = 0, positive = 1 };

inline int to_sign(Label l) { return l == Label::positive ? 1 : -1; }

struct EegRecord {
  std::vector<double> samples;  // microvolts
  BonnSet set = BonnSet::A;
  std::string file_id;
};

// The six healthy-vs-epileptic pairings.
enum class Pair { AC, AD, AE, BC, BD, BE };

inline constexpr Pair kAllPairs[] = {Pair::AC, Pair::AD, Pair::AE,
                                     Pair::BC, Pair::BD, Pair::BE};

std::string pair_name(Pair pair);  // "A-C"
std::optional<Pair> parse_pair(std::string_view text);
BonnSet healthy_member(Pair pair);
BonnSet epileptic_member(Pair pair);

struct PairDataset {
  std::vector<EegRecord> records;
  std::vector<Label> labels;
  Pair pair = Pair::AE;

  std::size_t size() const { return records.size(); }
  std::size_t count(Label l) const;
};

struct SetLoad {
  std::vector<EegRecord> records;
  std::vector<std::string> warnings;
};

// Thrown for unreadable or malformed corpus input.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Directory holding the files of `set` below `root`, if one exists. Both
// letter conventions are recognised (`A` or `Z`, either case).
std::optional<std::filesystem::path> find_set_dir(const std::filesystem::path& root, BonnSet set);

// Parses one whitespace-separated numeric text file.
std::vector<double> parse_samples(const std::filesystem::path& file);

// Loads every *.txt / *.TXT file of the set, sorted by file name. Record
// count and length deviations are reported as warnings.
SetLoad load_set(const std::filesystem::path& root, BonnSet set);

// Healthy records get the negative label, epileptic ones the positive label.
PairDataset make_pair(std::vector<EegRecord> healthy, std::vector<EegRecord> epileptic, Pair pair);

// Convenience: load both members of `pair` and build the dataset.
PairDataset load_pair(const std::filesystem::path& root, Pair pair,
                      std::vector<std::string>* warnings = nullptr);

struct SetSummary {
  BonnSet set = BonnSet::A;
  bool present = false;
  std::size_t count = 0;
  std::size_t min_len = 0;
  std::size_t max_len = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
};

struct CorpusReport {
  std::vector<SetSummary> sets;

  bool has_errors() const;
  bool has_warnings() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

CorpusReport verify_corpus(const std::filesystem::path& root);

}  // namespace seizure
