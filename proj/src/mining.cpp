#include "poptree/mining.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "poptree/error.hpp"

namespace poptree {

ResolvedMiningConfig resolve(const MiningConfig& cfg, std::size_t n) {
  auto fail = [](const char* what) { throw Error(Errc::invalid_config, what); };
  if (cfg.conf_min < 0.0 || cfg.conf_min > 1.0) fail("conf_min must lie in [0, 1]");
  if (cfg.surprise_min < 0.0 || cfg.surprise_min > 1.0) fail("surprise_min must lie in [0, 1]");
  if (!(cfg.mad.b > 0.0)) fail("MAD constant b must be > 0");
  if (!(cfg.mad.k > 0.0)) fail("MAD multiplier k must be > 0");
  if (cfg.p_min < 1) fail("p_min must be >= 1");
  if (cfg.p_min > n) fail("p_min exceeds the sequence length");
  if (cfg.tolerance >= cfg.p_min) fail("tolerance must be smaller than p_min");
  if (cfg.min_seg_len && *cfg.min_seg_len < 1) fail("min_seg_len must be >= 1");

  ResolvedMiningConfig out{cfg, 0, 0};
  out.p_max = cfg.p_max.value_or(std::max(cfg.p_min, n / 2));
  if (out.p_max < cfg.p_min || out.p_max > n) fail("p_max must lie in [p_min, N]");
  out.d_max = cfg.d_max.value_or(2 * out.p_max);
  if (out.d_max < 1) fail("d_max must be >= 1");
  return out;
}

std::size_t f_max(std::size_t i_st, std::size_t i_end, std::size_t pattern_len, std::size_t p) {
  if (p == 0) throw Error(Errc::invalid_segment, "period must be >= 1");
  if (pattern_len == 0 || i_end + 1 < i_st + pattern_len) {
    throw Error(Errc::invalid_segment, "pattern does not fit inside [i_st, i_end]");
  }
  return (i_end + 1 - pattern_len - i_st) / p + 1;
}

std::vector<OutlierCandidate> candidate_outliers(std::span<const PatternRecord> records,
                                                 const FrequencyTable& pft,
                                                 const ResolvedMiningConfig& cfg) {
  std::vector<OutlierCandidate> out;
  const std::size_t span_floor = cfg.candidate_span_floor();
  for (const auto& rec : records) {
    if (rec.positions.empty()) continue;
    const auto* row = find_row(pft, rec.pattern.size());
    if (row == nullptr) {
      throw Error(Errc::invalid_stats, "no PFT row for pattern length " +
                                           std::to_string(rec.pattern.size()));
    }
    const auto f = static_cast<double>(rec.support());
    if (cfg.base.mad_gate && !(f < cfg.base.mad.k * row->mad)) continue;
    const std::size_t span = rec.positions.back() - rec.positions.front() + rec.pattern.size();
    if (!(span > span_floor)) continue;
    out.push_back(OutlierCandidate{rec.pattern, rec.positions, surprise(rec.support(), row->mean)});
  }
  std::sort(out.begin(), out.end(), [](const OutlierCandidate& a, const OutlierCandidate& b) {
    if (a.pattern.size() != b.pattern.size()) return a.pattern.size() < b.pattern.size();
    return a.pattern < b.pattern;
  });
  return out;
}

std::vector<OutlierCandidate> candidate_outliers(const PatternTree& tree,
                                                 const FrequencyTable& pft,
                                                 const MiningConfig& cfg) {
  if (tree.sequence_length() == 0) return {};
  const auto records = enumerate_patterns(tree);
  return candidate_outliers(records, pft, resolve(cfg, tree.sequence_length()));
}

namespace {

struct ScanResult {
  std::size_t last_match;
  std::size_t last_index;  // index into positions of the last match
  std::size_t count;
  std::size_t last_slot;   // k of the last matched slot
};

// Walks slots anchor + k*p. Matches must be past the previous match, within
// t of the slot and within d_max of the previous match; the nearest one wins
// (earlier on ties).
ScanResult scan(std::span<const std::size_t> positions, std::size_t anchor_index,
                std::size_t period, std::size_t horizon, std::size_t t, std::size_t d_max,
                std::vector<std::size_t>* matched) {
  const std::size_t anchor = positions[anchor_index];
  ScanResult r{anchor, anchor_index, 1, 0};
  for (std::size_t k = 1;; ++k) {
    const std::size_t slot = anchor + k * period;
    const std::size_t lo = slot - t;
    if (lo > horizon || lo > r.last_match + d_max) break;
    const std::size_t hi = std::min(slot + t, r.last_match + d_max);
    auto it = std::lower_bound(positions.begin() + static_cast<std::ptrdiff_t>(r.last_index) + 1,
                               positions.end(), lo);
    std::optional<std::size_t> best;
    for (; it != positions.end() && *it <= hi; ++it) {
      const std::size_t idx = static_cast<std::size_t>(it - positions.begin());
      const std::size_t dist = *it > slot ? *it - slot : slot - *it;
      if (!best) {
        best = idx;
        continue;
      }
      const std::size_t best_pos = positions[*best];
      const std::size_t best_dist = best_pos > slot ? best_pos - slot : slot - best_pos;
      if (dist < best_dist) best = idx;
    }
    if (best) {
      r.last_match = positions[*best];
      r.last_index = *best;
      ++r.count;
      r.last_slot = k;
      if (matched) matched->push_back(*best);
    }
  }
  return r;
}

}  // namespace

std::vector<PeriodicSegment> mine_periods(std::span<const std::size_t> positions,
                                          std::size_t pattern_len, std::size_t n,
                                          const ResolvedMiningConfig& cfg) {
  if (positions.size() < 2 || pattern_len == 0 || pattern_len > n) return {};
  const std::size_t t = cfg.base.tolerance;
  const std::size_t horizon = std::min(n - pattern_len, positions.back());
  const bool exact = t == 0;

  // With t == 0 a scan from an already-matched occurrence retraces the same
  // grid and can only yield a contained segment.
  std::unordered_set<std::uint64_t> covered;
  std::vector<std::size_t> matched;
  const auto key = [](std::size_t index, std::size_t p) {
    return (static_cast<std::uint64_t>(index) << 32) | static_cast<std::uint64_t>(p);
  };

  std::vector<PeriodicSegment> segments;
  std::unordered_map<std::size_t, std::size_t> furthest_end;
  for (std::size_t a = 0; a < positions.size(); ++a) {
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      const std::size_t p = positions[b] - positions[a];
      if (p < cfg.base.p_min) continue;
      if (p > cfg.p_max) break;
      if (exact && covered.count(key(a, p))) continue;

      matched.clear();
      const auto r = scan(positions, a, p, horizon, t, cfg.d_max, exact ? &matched : nullptr);
      for (const std::size_t j : matched) covered.insert(key(j, p));
      PeriodicSegment seg{p, positions[a], r.last_match + pattern_len - 1, r.count,
                          r.last_slot + 1};
      if (seg.count < 2 || seg.end - seg.start + 1 < cfg.min_seg_len_for(p)) continue;
      // Anchors ascend, so every earlier segment of period p starts no later
      // than this one; containment reduces to comparing ends.
      auto [furthest, fresh] = furthest_end.try_emplace(p, seg.end);
      if (!fresh) {
        if (seg.end <= furthest->second) continue;
        furthest->second = seg.end;
      }
      segments.push_back(seg);
    }
  }
  return segments;
}

std::vector<PeriodicSegment> mine_periods(std::span<const std::size_t> positions,
                                          std::size_t pattern_len, std::size_t n,
                                          const MiningConfig& cfg) {
  return mine_periods(positions, pattern_len, n, resolve(cfg, n));
}

std::vector<PeriodicHit> score_and_select(std::span<const CandidateSegments> mined,
                                          const ResolvedMiningConfig& cfg) {
  std::vector<PeriodicHit> hits;
  for (const auto& entry : mined) {
    const auto& cand = entry.candidate;
    if (cfg.base.mad_gate && !(cand.surprise > cfg.base.surprise_min)) continue;
    for (const auto& seg : entry.segments) {
      const double conf = static_cast<double>(seg.count) / static_cast<double>(seg.max_count);
      if (!(conf > cfg.base.conf_min)) continue;
      hits.push_back(PeriodicHit{cand.pattern, seg.period, seg.start, seg.end, seg.count,
                                 seg.max_count, conf, cand.surprise});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const PeriodicHit& a, const PeriodicHit& b) {
    if (a.surprise != b.surprise) return a.surprise > b.surprise;
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.pattern.size() != b.pattern.size()) return a.pattern.size() > b.pattern.size();
    if (a.pattern != b.pattern) return a.pattern < b.pattern;
    if (a.period != b.period) return a.period < b.period;
    return a.start < b.start;
  });
  if (cfg.base.top_n > 0 && hits.size() > cfg.base.top_n) hits.resize(cfg.base.top_n);
  return hits;
}

std::vector<PeriodicHit> mine_records(std::span<const PatternRecord> records,
                                      const FrequencyTable& pft, std::size_t n,
                                      const MiningConfig& cfg) {
  if (n == 0) return {};
  const auto resolved = resolve(cfg, n);
  auto candidates = candidate_outliers(records, pft, resolved);

  std::vector<CandidateSegments> mined(candidates.size());
  auto work = [&](std::size_t i) {
    mined[i].segments =
        mine_periods(candidates[i].positions, candidates[i].pattern.size(), n, resolved);
    mined[i].candidate = std::move(candidates[i]);
  };

  const std::size_t workers = std::min(std::max<std::size_t>(cfg.threads, 1), candidates.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < candidates.size(); i = next++) work(i);
      });
    }
  }
  return score_and_select(mined, resolved);
}

PipelineResult run_pipeline(const SymbolSequence& seq, const TreeConstraints& constraints,
                            const MiningConfig& cfg) {
  PipelineResult result{build_tree(seq, constraints), {}, {}};
  result.pft = compute_pft(result.tree, cfg.mad);
  const auto records = enumerate_patterns(result.tree);
  result.hits = mine_records(records, result.pft, seq.size(), cfg);
  return result;
}

}  // namespace poptree
