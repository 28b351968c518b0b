#include "poptree/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "poptree/error.hpp"
#include "poptree/oracle.hpp"

namespace poptree::bench {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Modulo keeps generation identical across standard libraries.
std::uint8_t draw(std::mt19937_64& rng, std::size_t k) {
  return static_cast<std::uint8_t>(rng() % k);
}

template <typename F>
double fastest_ms(std::size_t reps, F&& run) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < std::max<std::size_t>(reps, 1); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    run();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

SymbolSequence random_sequence(std::size_t n, std::size_t alphabet_size, std::uint64_t seed) {
  if (alphabet_size == 0) throw Error(Errc::invalid_config, "alphabet size must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Symbol> symbols(n);
  for (auto& s : symbols) s.code = draw(rng, alphabet_size);
  return SymbolSequence(std::move(symbols), Alphabet::letters(alphabet_size), "random");
}

SymbolSequence periodic_sequence(std::size_t n, std::size_t period, std::size_t alphabet_size,
                                 double noise, std::uint64_t seed) {
  if (period == 0) return random_sequence(n, alphabet_size, seed);
  if (alphabet_size == 0) throw Error(Errc::invalid_config, "alphabet size must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> motif(period);
  for (auto& m : motif) m = draw(rng, alphabet_size);
  std::vector<Symbol> symbols(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    symbols[i].code = u < noise ? draw(rng, alphabet_size) : motif[i % period];
  }
  return SymbolSequence(std::move(symbols), Alphabet::letters(alphabet_size), "periodic");
}

void validate(const SweepConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(Errc::invalid_config, what); };
  if (cfg.lengths.empty()) fail("at least one series length is required");
  if (cfg.periods.empty()) fail("at least one period is required");
  if (cfg.max_pattern_len < 1) fail("max pattern length must be >= 1");
  if (cfg.alphabet_size < 1 || cfg.alphabet_size > 62) fail("alphabet size must lie in [1, 62]");
  for (auto n : cfg.lengths) {
    if (n < 2) fail("series lengths must be >= 2");
    for (auto p : cfg.periods) {
      if (p >= n) fail("period " + std::to_string(p) + " must be below length " +
                       std::to_string(n));
    }
  }
}

SymbolSequence sweep_sequence(const SweepConfig& cfg, std::size_t n, std::size_t period) {
  return periodic_sequence(n, period, cfg.alphabet_size, 0.05, mix(cfg.seed, n, period));
}

std::vector<TimingRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<TimingRow> rows;
  for (auto n : cfg.lengths) {
    for (auto period : cfg.periods) {
      const auto seq = sweep_sequence(cfg, n, period);
      TreeConstraints constraints;
      constraints.level_cap = std::min(cfg.max_pattern_len, n);
      constraints.min_sup = cfg.min_sup;
      const double tree_ms =
          fastest_ms(cfg.reps, [&] { (void)run_pipeline(seq, constraints, cfg.mining); });
      const double oracle_ms = fastest_ms(cfg.reps, [&] {
        (void)reference_mine(seq, *constraints.level_cap, cfg.min_sup, cfg.mining);
      });
      rows.push_back({n, period, "tree", tree_ms});
      rows.push_back({n, period, "oracle", oracle_ms});
    }
  }
  return rows;
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
  out << "series_len,period,algo,millis\n";
  char buf[32];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f", r.millis);
    out << r.series_len << ',' << r.period << ',' << r.algo << ',' << buf << '\n';
  }
}

}  // namespace poptree::bench
