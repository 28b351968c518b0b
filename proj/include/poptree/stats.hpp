#pragma once

// Pattern Frequency Table (per-length mean / median / MAD of supports) and
// the surprise score.

#include <cstddef>
#include <span>
#include <vector>

#include "poptree/pattern_tree.hpp"

namespace poptree {

struct MadParams {
  double b = 1.4826;  // consistency constant under normality
  double k = 1.0;     // gate multiplier
};

struct FrequencyStats {
  std::size_t pattern_len = 0;
  std::size_t n_patterns = 0;
  double mean = 0.0;
  double median = 0.0;
  double mad = 0.0;
};

using FrequencyTable = std::vector<FrequencyStats>;

// Odd count: middle element. Even count: midpoint of the two middle ones.
double median(std::span<const double> values);

// b * median(|x_i - median(x)|)
double mad(std::span<const double> values, const MadParams& params = {});

// One row per pattern length present, ascending.
FrequencyTable compute_pft(std::span<const PatternRecord> records, const MadParams& params = {});
FrequencyTable compute_pft(const PatternTree& tree, const MadParams& params = {});

// nullptr when no row exists for that length.
const FrequencyStats* find_row(const FrequencyTable& table, std::size_t pattern_len);

// 1 - f / mean; negative for above-average patterns. Throws invalid_stats
// when mean <= 0.
double surprise(std::size_t frequency, double mean_same_len);

}  // namespace poptree
