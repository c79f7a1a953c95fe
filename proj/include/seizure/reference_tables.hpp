#pragma once

// Published 10-fold results on the Bonn pairs, one table per
// (reducer, classifier). Percentages except f_measure, which is a fraction
// rounded to two decimals.

#include <array>

#include "seizure/classify.hpp"
#include "seizure/dataset.hpp"
#include "seizure/dimred.hpp"

namespace seizure {

struct ReferenceRow {
  Pair pair;
  double accuracy;
  double sensitivity;
  double specificity;
  double precision;
  double recall;
  double f_measure;
};

using ReferenceTable = std::array<ReferenceRow, 6>;

const ReferenceTable& reference_table(Method method, ClassifierKind classifier);

}  // namespace seizure
