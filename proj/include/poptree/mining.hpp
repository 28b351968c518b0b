#pragma once

// Outlier periodicity mining: MAD-gated candidate selection, tolerance-window
// period detection over position vectors, confidence/surprise scoring and
// ranking.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "poptree/pattern_tree.hpp"
#include "poptree/sequence.hpp"
#include "poptree/stats.hpp"

namespace poptree {

struct MiningConfig {
  double conf_min = 0.5;
  double surprise_min = 0.5;
  std::size_t tolerance = 0;
  // Max gap between consecutive matched occurrences. Default 2 * p_max.
  std::optional<std::size_t> d_max;
  // Absolute minimum segment span. Default is period-relative (2 * p).
  std::optional<std::size_t> min_seg_len;
  MadParams mad;
  // Off: every retained pattern is mined and only the confidence gate
  // applies (frequent periodic patterns).
  bool mad_gate = true;
  std::size_t p_min = 1;
  // Default max(p_min, N / 2).
  std::optional<std::size_t> p_max;
  std::size_t top_n = 0;  // 0 keeps every hit
  std::size_t threads = 1;
};

// MiningConfig with every default filled in for one sequence length.
struct ResolvedMiningConfig {
  MiningConfig base;
  std::size_t p_max = 0;
  std::size_t d_max = 0;

  std::size_t min_seg_len_for(std::size_t period) const {
    return base.min_seg_len.value_or(2 * period);
  }
  // Span floor used by the candidate gate, before any period is known.
  std::size_t candidate_span_floor() const {
    return base.min_seg_len.value_or(2 * base.p_min);
  }
};

// Throws invalid_config on violated bounds (p_min <= p_max <= N, t < p_min,
// thresholds in [0, 1], positive MAD parameters).
ResolvedMiningConfig resolve(const MiningConfig& cfg, std::size_t n);

struct PeriodicSegment {
  std::size_t period = 0;
  std::size_t start = 0;      // first matched occurrence
  std::size_t end = 0;        // last matched occurrence + |X| - 1
  std::size_t count = 0;      // matched occurrences
  std::size_t max_count = 0;  // slots on the period grid up to the last match

  friend bool operator==(const PeriodicSegment&, const PeriodicSegment&) = default;
};

struct OutlierCandidate {
  Pattern pattern;
  std::span<const std::size_t> positions;
  double surprise = 0.0;

  std::size_t frequency() const noexcept { return positions.size(); }
};

struct CandidateSegments {
  OutlierCandidate candidate;
  std::vector<PeriodicSegment> segments;
};

struct PeriodicHit {
  Pattern pattern;
  std::size_t period = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t count = 0;
  std::size_t max_count = 0;
  double confidence = 0.0;
  double surprise = 0.0;

  friend bool operator==(const PeriodicHit&, const PeriodicHit&) = default;
};

// floor((i_end + 1 - len - i_st) / p) + 1. Throws invalid_segment when
// p == 0 or the pattern does not fit in [i_st, i_end].
std::size_t f_max(std::size_t i_st, std::size_t i_end, std::size_t pattern_len, std::size_t p);

// Patterns below mad.k * MAD of their length whose occurrence span exceeds
// the span floor. Sorted by length, then symbol codes.
std::vector<OutlierCandidate> candidate_outliers(std::span<const PatternRecord> records,
                                                 const FrequencyTable& pft,
                                                 const ResolvedMiningConfig& cfg);
std::vector<OutlierCandidate> candidate_outliers(const PatternTree& tree,
                                                 const FrequencyTable& pft,
                                                 const MiningConfig& cfg);

// Anchored slot scans over every pairwise position difference in
// [p_min, p_max]. See README for the matching rules.
std::vector<PeriodicSegment> mine_periods(std::span<const std::size_t> positions,
                                          std::size_t pattern_len, std::size_t n,
                                          const ResolvedMiningConfig& cfg);
std::vector<PeriodicSegment> mine_periods(std::span<const std::size_t> positions,
                                          std::size_t pattern_len, std::size_t n,
                                          const MiningConfig& cfg);

// Applies the confidence and surprise gates and ranks: surprise desc,
// confidence desc, length desc, pattern asc, period asc, start asc.
std::vector<PeriodicHit> score_and_select(std::span<const CandidateSegments> mined,
                                          const ResolvedMiningConfig& cfg);

// Candidate gate + period mining + scoring over any pattern source.
std::vector<PeriodicHit> mine_records(std::span<const PatternRecord> records,
                                      const FrequencyTable& pft, std::size_t n,
                                      const MiningConfig& cfg);

struct PipelineResult {
  PatternTree tree;
  FrequencyTable pft;
  std::vector<PeriodicHit> hits;
};

PipelineResult run_pipeline(const SymbolSequence& seq, const TreeConstraints& constraints,
                            const MiningConfig& cfg);

}  // namespace poptree
