#include "seizure/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "seizure/evaluate.hpp"
#include "seizure/random.hpp"

namespace seizure {

namespace {

constexpr std::size_t kLevels = 5;

// Inverse of the 5-level Haar analysis for lengths divisible by 32.
std::vector<double> haar_synthesis(std::vector<double> approx,
                                   const std::vector<std::vector<double>>& details) {
  const double s = 1.0 / std::numbers::sqrt2;
  for (std::size_t lvl = kLevels; lvl-- > 0;) {
    const auto& d = details[lvl];
    std::vector<double> up(2 * approx.size());
    for (std::size_t i = 0; i < approx.size(); ++i) {
      up[2 * i] = (approx[i] + d[i]) * s;
      up[2 * i + 1] = (approx[i] - d[i]) * s;
    }
    approx = std::move(up);
  }
  return approx;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

void check(const SyntheticOptions& o) {
  if (o.length < 32 || o.length % 32 != 0)
    throw std::invalid_argument("synthetic: length must be a positive multiple of 32");
  if (o.sources == 0 || o.per_set == 0) throw std::invalid_argument("synthetic: empty corpus");
  if (!(o.low_max < o.high_min)) throw std::invalid_argument("synthetic: amplitude ranges overlap");
}

}  // namespace

SyntheticModel synthetic_model(const SyntheticOptions& o) {
  check(o);
  NormalSource normal(derive_seed(o.seed, 0));
  SyntheticModel m;
  for (std::size_t j = 0; j < o.sources; ++j) {
    std::vector<std::vector<double>> details(kLevels);
    std::size_t width = o.length;
    for (std::size_t lvl = 0; lvl < kLevels; ++lvl) {
      width /= 2;
      details[lvl].resize(width);
      for (double& v : details[lvl]) v = normal();
    }
    std::vector<double> approx(width);
    for (double& v : approx) v = normal();
    m.templates.push_back(haar_synthesis(std::move(approx), details));
  }
  // Energy of a record whose every amplitude sits midway between the ranges.
  const double mid = 0.5 * (o.low_max + o.high_min);
  std::vector<double> nominal(o.length, 0.0);
  for (const auto& t : m.templates)
    for (std::size_t i = 0; i < o.length; ++i) nominal[i] += mid * t[i];
  m.threshold = signal_energy(nominal);
  return m;
}

double signal_energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

Label energy_label(const SyntheticModel& model, std::span<const double> x) {
  return signal_energy(x) > model.threshold ? Label::positive : Label::negative;
}

std::vector<EegRecord> synthetic_set(const SyntheticOptions& o, BonnSet set) {
  const SyntheticModel model = synthetic_model(o);
  const bool high = is_epileptic(set);
  const Label want = high ? Label::positive : Label::negative;
  NormalSource normal(derive_seed(o.seed, 1 + static_cast<std::uint64_t>(set)));
  std::vector<EegRecord> out;
  for (std::size_t r = 0; r < o.per_set; ++r) {
    EegRecord rec;
    rec.set = set;
    char id[16];
    std::snprintf(id, sizeof id, "%c%03zu", set_file_letter(set), r + 1);
    rec.file_id = id;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) throw std::runtime_error("synthetic: cannot draw a record of its class");
      rec.samples.assign(o.length, 0.0);
      for (const auto& t : model.templates) {
        const double a = high ? uniform(normal.engine(), o.high_min, o.high_max)
                              : uniform(normal.engine(), o.low_min, o.low_max);
        for (std::size_t i = 0; i < o.length; ++i) rec.samples[i] += a * t[i];
      }
      for (double& v : rec.samples) v += o.noise * normal();
      if (energy_label(model, rec.samples) == want) break;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

PairDataset synthetic_pair(const SyntheticOptions& o, Pair pair) {
  return make_pair(synthetic_set(o, healthy_member(pair)), synthetic_set(o, epileptic_member(pair)),
                   pair);
}

void write_synthetic_corpus(const std::filesystem::path& root, const SyntheticOptions& o) {
  for (BonnSet set : {BonnSet::A, BonnSet::B, BonnSet::C, BonnSet::D, BonnSet::E}) {
    const auto dir = root / std::string(1, set_letter(set));
    std::filesystem::create_directories(dir);
    for (const auto& rec : synthetic_set(o, set)) {
      std::ofstream out(dir / (rec.file_id + ".txt"));
      if (!out) throw std::runtime_error("cannot write " + (dir / rec.file_id).string());
      char buf[32];
      for (double v : rec.samples) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
      }
    }
  }
}

}  // namespace seizure
