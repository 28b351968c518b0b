#include "poptree/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace poptree {

OracleResult reference_mine(const SymbolSequence& seq, std::size_t max_len, std::size_t min_sup,
                            const MiningConfig& cfg) {
  OracleResult result;
  const std::size_t n = seq.size();
  const auto symbols = seq.symbols();
  for (std::size_t len = 1; len <= max_len && len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      Pattern key(symbols.begin() + static_cast<std::ptrdiff_t>(i),
                  symbols.begin() + static_cast<std::ptrdiff_t>(i + len));
      result.patterns[std::move(key)].push_back(i);
    }
  }
  std::erase_if(result.patterns, [&](const auto& entry) { return entry.second.size() < min_sup; });

  std::vector<PatternRecord> records;
  records.reserve(result.patterns.size());
  for (const auto& [pattern, positions] : result.patterns) {
    records.push_back(PatternRecord{pattern, positions});
  }
  result.pft = compute_pft(records, cfg.mad);
  result.hits = mine_records(records, result.pft, n, cfg);
  return result;
}

namespace {

std::string describe(const Pattern& p, const Alphabet& alphabet) {
  return "'" + render(p, alphabet) + "'";
}

}  // namespace

EquivalenceReport assert_equivalence(const OracleResult& oracle, const PipelineResult& pipeline,
                                     const Alphabet& alphabet) {
  auto fail = [](std::string msg) { return EquivalenceReport{false, std::move(msg)}; };

  std::map<Pattern, std::span<const std::size_t>> tree_patterns;
  for (const auto& rec : enumerate_patterns(pipeline.tree)) {
    tree_patterns.emplace(rec.pattern, rec.positions);
  }
  for (const auto& [pattern, positions] : oracle.patterns) {
    const auto it = tree_patterns.find(pattern);
    if (it == tree_patterns.end()) {
      return fail("pattern " + describe(pattern, alphabet) + " (support " +
                  std::to_string(positions.size()) + ") missing from tree");
    }
    if (!std::equal(positions.begin(), positions.end(), it->second.begin(), it->second.end())) {
      return fail("pattern " + describe(pattern, alphabet) + ": positions differ");
    }
  }
  for (const auto& [pattern, positions] : tree_patterns) {
    if (!oracle.patterns.contains(pattern)) {
      return fail("pattern " + describe(pattern, alphabet) + " (support " +
                  std::to_string(positions.size()) + ") missing from oracle");
    }
  }

  if (oracle.pft.size() != pipeline.pft.size()) {
    return fail("PFT row count " + std::to_string(oracle.pft.size()) + " vs " +
                std::to_string(pipeline.pft.size()));
  }
  for (std::size_t i = 0; i < oracle.pft.size(); ++i) {
    const auto& a = oracle.pft[i];
    const auto& b = pipeline.pft[i];
    const char* field = nullptr;
    if (a.pattern_len != b.pattern_len) field = "pattern_length";
    else if (a.n_patterns != b.n_patterns) field = "count";
    else if (a.mean != b.mean) field = "mean";
    else if (a.median != b.median) field = "median";
    else if (a.mad != b.mad) field = "mad";
    if (field) return fail("PFT row " + std::to_string(i) + ": field " + field + " differs");
  }

  if (oracle.hits.size() != pipeline.hits.size()) {
    return fail("hit count " + std::to_string(oracle.hits.size()) + " vs " +
                std::to_string(pipeline.hits.size()));
  }
  for (std::size_t i = 0; i < oracle.hits.size(); ++i) {
    const auto& a = oracle.hits[i];
    const auto& b = pipeline.hits[i];
    const char* field = nullptr;
    if (a.pattern != b.pattern) field = "pattern";
    else if (a.period != b.period) field = "period";
    else if (a.start != b.start) field = "start_pos";
    else if (a.end != b.end) field = "end_pos";
    else if (a.count != b.count) field = "count";
    else if (a.confidence != b.confidence) field = "conf";
    else if (a.surprise != b.surprise) field = "surp";
    if (field) {
      return fail("hit " + std::to_string(i) + " " + describe(a.pattern, alphabet) + ": field " +
                  field + " differs");
    }
  }
  return {};
}

}  // namespace poptree
