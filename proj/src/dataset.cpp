#include "seizure/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace seizure {

namespace {

constexpr char kLetters[] = {'A', 'B', 'C', 'D', 'E'};
constexpr char kFileLetters[] = {'Z', 'O', 'N', 'F', 'S'};
constexpr BonnSet kAllSets[] = {BonnSet::A, BonnSet::B, BonnSet::C, BonnSet::D, BonnSet::E};

bool has_txt_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".txt";
}

std::vector<fs::path> list_record_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_txt_extension(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

}  // namespace

char set_letter(BonnSet set) { return kLetters[static_cast<int>(set)]; }
char set_file_letter(BonnSet set) { return kFileLetters[static_cast<int>(set)]; }

std::string set_name(BonnSet set) {
  return std::string{set_letter(set)} + "/" + set_file_letter(set);
}

std::optional<BonnSet> parse_set(std::string_view text) {
  if (text.size() != 1) return std::nullopt;
  const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  for (int i = 0; i < 5; ++i) {
    if (c == kLetters[i] || c == kFileLetters[i]) return kAllSets[i];
  }
  return std::nullopt;
}

bool is_epileptic(BonnSet set) {
  return set == BonnSet::C || set == BonnSet::D || set == BonnSet::E;
}

std::string pair_name(Pair pair) {
  return std::string{set_letter(healthy_member(pair))} + "-" + set_letter(epileptic_member(pair));
}

std::optional<Pair> parse_pair(std::string_view text) {
  for (Pair p : kAllPairs) {
    const std::string name = pair_name(p);
    if (text.size() == name.size() &&
        std::equal(text.begin(), text.end(), name.begin(), [](char a, char b) {
          return std::toupper(static_cast<unsigned char>(a)) == b;
        }))
      return p;
  }
  return std::nullopt;
}

BonnSet healthy_member(Pair pair) {
  switch (pair) {
    case Pair::AC:
    case Pair::AD:
    case Pair::AE: return BonnSet::A;
    default: return BonnSet::B;
  }
}

BonnSet epileptic_member(Pair pair) {
  switch (pair) {
    case Pair::AC:
    case Pair::BC: return BonnSet::C;
    case Pair::AD:
    case Pair::BD: return BonnSet::D;
    default: return BonnSet::E;
  }
}

std::size_t PairDataset::count(Label l) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

std::optional<fs::path> find_set_dir(const fs::path& root, BonnSet set) {
  const char upper[] = {set_letter(set), set_file_letter(set)};
  for (char c : upper) {
    for (char variant : {c, static_cast<char>(std::tolower(static_cast<unsigned char>(c)))}) {
      fs::path candidate = root / std::string{variant};
      std::error_code ec;
      if (fs::is_directory(candidate, ec)) return candidate;
    }
  }
  return std::nullopt;
}

std::vector<double> parse_samples(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw CorpusError("cannot open " + file.string());

  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
      if (p == end) break;
      const char* token_end = p;
      while (token_end < end && !std::isspace(static_cast<unsigned char>(*token_end))) ++token_end;
      // from_chars rejects a leading '+'
      const char* first = (*p == '+' && token_end - p > 1) ? p + 1 : p;
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(first, token_end, value);
      if (ec != std::errc{} || ptr != token_end || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << file.string() << ":" << line_no << ": unparsable token '"
            << std::string_view(p, static_cast<std::size_t>(token_end - p)) << "'";
        throw CorpusError(msg.str());
      }
      samples.push_back(value);
      p = token_end;
    }
  }
  if (samples.empty()) throw CorpusError(file.string() + ": empty file");
  return samples;
}

SetLoad load_set(const fs::path& root, BonnSet set) {
  auto dir = find_set_dir(root, set);
  if (!dir) {
    throw CorpusError("missing directory for set " + set_name(set) + " under " + root.string());
  }
  SetLoad out;
  std::vector<std::string> odd;  // "file: length" for records of unexpected length
  for (const auto& file : list_record_files(*dir)) {
    EegRecord rec;
    rec.samples = parse_samples(file);
    rec.set = set;
    rec.file_id = file.stem().string();
    if (rec.samples.size() != kExpectedSamplesPerRecord)
      odd.push_back(file.filename().string() + ": " + std::to_string(rec.samples.size()));
    out.records.push_back(std::move(rec));
  }
  if (!odd.empty()) {
    std::string msg = "set " + set_name(set) + ": " + std::to_string(odd.size()) +
                      " record(s) not " + std::to_string(kExpectedSamplesPerRecord) +
                      " samples long (";
    for (std::size_t i = 0; i < std::min<std::size_t>(3, odd.size()); ++i)
      msg += (i ? ", " : "") + odd[i];
    msg += odd.size() > 3 ? ", ...)" : ")";
    out.warnings.push_back(msg);
  }
  if (out.records.size() != kExpectedRecordsPerSet) {
    out.warnings.push_back("set " + set_name(set) + ": expected " +
                           std::to_string(kExpectedRecordsPerSet) + ", found " +
                           std::to_string(out.records.size()));
  }
  return out;
}

PairDataset make_pair(std::vector<EegRecord> healthy, std::vector<EegRecord> epileptic, Pair pair) {
  if (healthy.empty() || epileptic.empty()) {
    throw std::invalid_argument("empty class in pair " + pair_name(pair));
  }
  for (const auto& r : healthy) {
    if (r.set != healthy_member(pair))
      throw std::invalid_argument("record " + r.file_id + " is not from set " +
                                  set_name(healthy_member(pair)));
  }
  for (const auto& r : epileptic) {
    if (r.set != epileptic_member(pair))
      throw std::invalid_argument("record " + r.file_id + " is not from set " +
                                  set_name(epileptic_member(pair)));
  }
  PairDataset ds;
  ds.pair = pair;
  ds.records.reserve(healthy.size() + epileptic.size());
  ds.labels.reserve(healthy.size() + epileptic.size());
  for (auto& r : healthy) {
    ds.records.push_back(std::move(r));
    ds.labels.push_back(Label::negative);
  }
  for (auto& r : epileptic) {
    ds.records.push_back(std::move(r));
    ds.labels.push_back(Label::positive);
  }
  return ds;
}

PairDataset load_pair(const fs::path& root, Pair pair, std::vector<std::string>* warnings) {
  SetLoad healthy = load_set(root, healthy_member(pair));
  SetLoad epileptic = load_set(root, epileptic_member(pair));
  if (warnings) {
    warnings->insert(warnings->end(), healthy.warnings.begin(), healthy.warnings.end());
    warnings->insert(warnings->end(), epileptic.warnings.begin(), epileptic.warnings.end());
  }
  return make_pair(std::move(healthy.records), std::move(epileptic.records), pair);
}

bool CorpusReport::has_errors() const {
  return std::any_of(sets.begin(), sets.end(), [](const SetSummary& s) { return !s.errors.empty(); });
}

bool CorpusReport::has_warnings() const {
  return std::any_of(sets.begin(), sets.end(),
                     [](const SetSummary& s) { return !s.warnings.empty(); });
}

std::string CorpusReport::to_text() const {
  std::ostringstream os;
  for (const auto& s : sets) {
    os << "set " << set_name(s.set) << ": ";
    if (!s.present) {
      os << "missing\n";
    } else {
      os << "count=" << s.count << " length=" << s.min_len;
      if (s.max_len != s.min_len) os << ".." << s.max_len;
      os << "\n";
    }
    for (const auto& w : s.warnings) os << "  warning: " << w << "\n";
    for (const auto& e : s.errors) os << "  error: " << e << "\n";
  }
  return os.str();
}

nlohmann::json CorpusReport::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : sets) {
    out.push_back({{"set", std::string{set_letter(s.set)}},
                   {"count", s.count},
                   {"min_len", s.min_len},
                   {"max_len", s.max_len},
                   {"warnings", s.warnings},
                   {"errors", s.errors}});
  }
  return out;
}

CorpusReport verify_corpus(const fs::path& root) {
  CorpusReport report;
  for (BonnSet set : kAllSets) {
    SetSummary summary;
    summary.set = set;
    auto dir = find_set_dir(root, set);
    if (!dir) {
      summary.errors.push_back("missing directory for set " + set_name(set));
      report.sets.push_back(std::move(summary));
      continue;
    }
    summary.present = true;
    bool first = true;
    for (const auto& file : list_record_files(*dir)) {
      std::size_t len = 0;
      try {
        len = parse_samples(file).size();
      } catch (const CorpusError& e) {
        summary.errors.push_back(e.what());
        continue;
      }
      ++summary.count;
      summary.min_len = first ? len : std::min(summary.min_len, len);
      summary.max_len = first ? len : std::max(summary.max_len, len);
      first = false;
      if (len != kExpectedSamplesPerRecord) {
        summary.warnings.push_back(file.filename().string() + ": length " + std::to_string(len) +
                                   " outside expected " +
                                   std::to_string(kExpectedSamplesPerRecord));
      }
    }
    if (summary.count != kExpectedRecordsPerSet) {
      summary.warnings.push_back("expected " + std::to_string(kExpectedRecordsPerSet) +
                                 ", found " + std::to_string(summary.count));
    }
    report.sets.push_back(std::move(summary));
  }
  return report;
}

}  // namespace seizure
