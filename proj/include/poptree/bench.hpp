#pragma once

// Timing sweeps of the tree pipeline against the brute-force oracle.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "poptree/mining.hpp"

namespace poptree::bench {

// i.i.d. uniform symbols over 'A'.. (alphabet_size letters).
SymbolSequence random_sequence(std::size_t n, std::size_t alphabet_size, std::uint64_t seed);

// A random motif of length `period` tiled over n symbols with a small
// substitution noise rate. period == 0 falls back to random_sequence.
SymbolSequence periodic_sequence(std::size_t n, std::size_t period, std::size_t alphabet_size,
                                 double noise, std::uint64_t seed);

struct SweepConfig {
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> periods{0};
  std::size_t alphabet_size = 4;
  std::size_t max_pattern_len = 8;
  std::size_t min_sup = 2;
  std::size_t reps = 3;  // each reported time is the fastest repetition
  std::uint64_t seed = 7;
  MiningConfig mining;
};

struct TimingRow {
  std::size_t series_len = 0;
  std::size_t period = 0;
  std::string algo;  // "tree" | "oracle"
  double millis = 0.0;
};

// Throws invalid_config for empty or inconsistent sweeps.
void validate(const SweepConfig& cfg);

// The sequence a sweep point is timed on; identical for identical seeds.
SymbolSequence sweep_sequence(const SweepConfig& cfg, std::size_t n, std::size_t period);

std::vector<TimingRow> run_sweep(const SweepConfig& cfg);

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);

}  // namespace poptree::bench
