#pragma once

// Shared inputs and generators for the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "poptree/mining.hpp"
#include "poptree/sequence.hpp"

namespace poptree::testing {

// 28-symbol worked-example series.
inline constexpr std::string_view series_s = "xyaexybdxyzdxybdxyzdxbyyxyzy";

inline SymbolSequence plain(std::string_view text) {
  return parse_symbols(text, TextFormat::plain);
}

// "ab" x 100 with 'z' written over positions 10, 60, 110, 160.
inline std::string planted_ab_text() {
  std::string s;
  for (int i = 0; i < 100; ++i) s += "ab";
  for (std::size_t p : {10, 60, 110, 160}) s[p] = 'z';
  return s;
}

struct PlantedCase {
  std::string text;
  char planted = 'z';
  std::size_t period = 0;
  std::size_t phase = 0;
};

// Background: a seeded motif with uneven symbol multiplicities tiled over n
// positions. The rare symbol 'z' overwrites positions phase + k * period,
// where period is a multiple of the motif length so it always lands on the
// same motif offset.
inline PlantedCase planted_case(std::uint64_t seed, std::size_t n = 2000) {
  std::mt19937_64 rng(seed);
  const std::vector<std::vector<std::size_t>> shapes{{3, 2, 1}, {4, 2, 1}, {5, 3, 1}, {4, 3, 1}};
  const auto& shape = shapes[rng() % shapes.size()];
  std::string letters = "abcd";
  for (std::size_t i = letters.size() - 1; i > 0; --i) std::swap(letters[i], letters[rng() % (i + 1)]);

  std::string motif;
  for (std::size_t i = 0; i < shape.size(); ++i) motif.append(shape[i], letters[i]);
  for (std::size_t i = motif.size() - 1; i > 0; --i) std::swap(motif[i], motif[rng() % (i + 1)]);

  PlantedCase c;
  c.period = motif.size() * (6 + rng() % 15);
  c.phase = rng() % c.period;
  c.text.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.text[i] = motif[i % motif.size()];
  for (std::size_t p = c.phase; p < n; p += c.period) c.text[p] = c.planted;
  return c;
}

inline MiningConfig planted_config() {
  MiningConfig cfg;
  cfg.conf_min = 0.8;
  cfg.surprise_min = 0.7;
  cfg.mad.k = 3.0;
  return cfg;
}

inline std::string random_text(std::mt19937_64& rng, std::size_t n, std::size_t alphabet) {
  std::string s(n, 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng() % alphabet);
  return s;
}

// Test-only slot matcher: occupancy bitmap over sequence positions, slots
// probed outward from the expected position. Shares no code with
// mine_periods.
inline std::vector<PeriodicSegment> brute_force_segments(const std::vector<std::size_t>& positions,
                                                         std::size_t len, std::size_t n,
                                                         std::size_t t, std::size_t d_max,
                                                         std::size_t p_min, std::size_t p_max,
                                                         std::size_t seg_floor_abs) {
  std::vector<bool> occ(n, false);
  for (auto p : positions) occ[p] = true;
  std::vector<PeriodicSegment> out;
  for (std::size_t a = 0; a < positions.size(); ++a) {
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      const std::size_t start = positions[a];
      const std::size_t p = positions[b] - start;
      if (p < p_min || p > p_max) continue;
      std::size_t last = start, f = 1, k_last = 0;
      for (std::size_t k = 1;; ++k) {
        const long long slot = static_cast<long long>(start + k * p);
        const long long tt = static_cast<long long>(t);
        if (slot - tt > static_cast<long long>(n) - static_cast<long long>(len)) break;
        if (slot - tt > static_cast<long long>(last + d_max)) break;
        long long found = -1;
        for (long long d = 0; d <= tt && found < 0; ++d) {
          for (long long x : {slot - d, slot + d}) {
            if (x < 0 || x >= static_cast<long long>(n) || !occ[static_cast<std::size_t>(x)]) continue;
            if (x <= static_cast<long long>(last)) continue;
            if (x - static_cast<long long>(last) > static_cast<long long>(d_max)) continue;
            found = x;
            break;
          }
        }
        if (found >= 0) {
          last = static_cast<std::size_t>(found);
          ++f;
          k_last = k;
        }
      }
      PeriodicSegment seg{p, start, last + len - 1, f, k_last + 1};
      const std::size_t floor = seg_floor_abs ? seg_floor_abs : 2 * p;
      if (f < 2 || seg.end - seg.start + 1 < floor) continue;
      bool dominated = false;
      for (const auto& s : out) {
        if (s.period == p && s.start <= seg.start && seg.end <= s.end) dominated = true;
      }
      if (!dominated) out.push_back(seg);
    }
  }
  return out;
}

}  // namespace poptree::testing
