#pragma once

// Synthetic stand-in for the Bonn corpus. Each record mixes a fixed bank of
// broadband source templates with random per-record amplitudes plus white
// noise. The class is a threshold on signal energy: healthy sets draw low
// amplitudes, epileptic sets high ones.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "seizure/dataset.hpp"

namespace seizure {

struct SyntheticOptions {
  std::size_t per_set = 100;
  std::size_t length = 256;   // multiple of 32
  std::size_t sources = 8;
  double noise = 0.05;        // white-noise standard deviation
  double low_min = 0.4, low_max = 1.0;
  double high_min = 1.4, high_max = 2.0;
  std::uint64_t seed = 2024;
};

struct SyntheticModel {
  std::vector<std::vector<double>> templates;
  double threshold = 0.0;  // energy separating the classes
};

SyntheticModel synthetic_model(const SyntheticOptions& options);

double signal_energy(std::span<const double> x);
Label energy_label(const SyntheticModel& model, std::span<const double> x);

std::vector<EegRecord> synthetic_set(const SyntheticOptions& options, BonnSet set);
PairDataset synthetic_pair(const SyntheticOptions& options, Pair pair);

// Writes all five sets as <root>/<A..E>/<Z|O|N|F|S>NNN.txt, one sample per line.
void write_synthetic_corpus(const std::filesystem::path& root, const SyntheticOptions& options);

}  // namespace seizure
