#pragma once

// Brute-force reference miner. Collects occurrences by direct substring
// scanning (no tree) and feeds them through the same scoring stages, so any
// divergence from run_pipeline isolates the tree.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "poptree/mining.hpp"

namespace poptree {

struct OracleResult {
  std::map<Pattern, std::vector<std::size_t>> patterns;
  FrequencyTable pft;
  std::vector<PeriodicHit> hits;
};

OracleResult reference_mine(const SymbolSequence& seq, std::size_t max_len, std::size_t min_sup,
                            const MiningConfig& cfg);

struct EquivalenceReport {
  bool passed = true;
  std::string diagnostic;  // first divergence, empty on pass
};

EquivalenceReport assert_equivalence(const OracleResult& oracle, const PipelineResult& pipeline,
                                     const Alphabet& alphabet);

}  // namespace poptree
