#include "poptree/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "poptree/error.hpp"

namespace poptree {

double median(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::empty_input, "median of empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return sorted[mid];
  return (sorted[mid - 1] + sorted[mid]) / 2.0;
}

double mad(std::span<const double> values, const MadParams& params) {
  if (values.empty()) throw Error(Errc::empty_input, "MAD of empty list");
  if (!(params.b > 0.0)) throw Error(Errc::invalid_config, "MAD constant b must be > 0");
  const double center = median(values);
  std::vector<double> deviations;
  deviations.reserve(values.size());
  for (double v : values) deviations.push_back(std::abs(v - center));
  return params.b * median(deviations);
}

FrequencyTable compute_pft(std::span<const PatternRecord> records, const MadParams& params) {
  std::map<std::size_t, std::vector<double>> by_length;
  for (const auto& rec : records) {
    by_length[rec.pattern.size()].push_back(static_cast<double>(rec.support()));
  }
  FrequencyTable table;
  table.reserve(by_length.size());
  for (auto& [len, supports] : by_length) {
    // Sorting first makes the sum independent of record order.
    std::sort(supports.begin(), supports.end());
    const double total = std::accumulate(supports.begin(), supports.end(), 0.0);
    table.push_back(FrequencyStats{len, supports.size(),
                                   total / static_cast<double>(supports.size()),
                                   median(supports), mad(supports, params)});
  }
  return table;
}

FrequencyTable compute_pft(const PatternTree& tree, const MadParams& params) {
  const auto records = enumerate_patterns(tree);
  return compute_pft(records, params);
}

const FrequencyStats* find_row(const FrequencyTable& table, std::size_t pattern_len) {
  const auto it = std::lower_bound(
      table.begin(), table.end(), pattern_len,
      [](const FrequencyStats& row, std::size_t len) { return row.pattern_len < len; });
  if (it == table.end() || it->pattern_len != pattern_len) return nullptr;
  return &*it;
}

double surprise(std::size_t frequency, double mean_same_len) {
  if (!(mean_same_len > 0.0)) {
    throw Error(Errc::invalid_stats, "surprise needs a positive mean frequency");
  }
  return 1.0 - static_cast<double>(frequency) / mean_same_len;
}

}  // namespace poptree
