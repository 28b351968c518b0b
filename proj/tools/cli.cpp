#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "poptree/bench.hpp"
#include "poptree/error.hpp"
#include "poptree/mining.hpp"
#include "poptree/report.hpp"

namespace poptree::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct MineOptions {
  std::string input;
  std::string format = "plain";
  std::string column = "0";
  std::size_t bins = 8;
  std::string from_manifest;

  double conf_min = 0.5;
  double surprise_min = 0.5;
  std::size_t tolerance = 0;
  std::optional<std::size_t> d_max;
  std::optional<std::size_t> min_seg_len;
  double mad_k = 1.0;
  double mad_b = 1.4826;
  bool no_mad_gate = false;
  std::size_t p_min = 1;
  std::optional<std::size_t> p_max;
  std::size_t top = 0;
  std::size_t threads = 1;

  std::size_t min_sup = 2;
  std::optional<std::size_t> level_cap;
  std::size_t max_pattern_len = 32;
  bool monotonic = false;
  double tree_min_conf = 0.0;

  std::string out_csv;
  std::string out_json;
  std::string out_pft;
  std::string dump_tree_path;
  bool no_timings = false;
};

struct DiscretizeOptions {
  std::string input;
  std::string column = "0";
  std::size_t bins = 8;
  std::string output;
};

struct BenchOptions {
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> periods{0};
  std::uint64_t seed = 7;
  std::size_t max_len = 8;
  std::size_t reps = 3;
  std::size_t alphabet = 4;
  std::string output;
};

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write '" + path + "'");
  return out;
}

struct Loaded {
  SymbolSequence sequence;
  std::optional<DiscretizationSpec> discretization;
};

Loaded load_input(const RunManifest& m) {
  const std::string text = read_file(m.input_path);
  Loaded loaded;
  if (m.input_format == "csv") {
    const auto values = read_csv_column(text, m.csv_column.value_or("0"));
    const auto bins = m.discretization ? m.discretization->bin_count : 8;
    auto d = discretize(values, bins);
    loaded.sequence = std::move(d.sequence);
    loaded.discretization = d.spec;
  } else {
    loaded.sequence = parse_symbols(
        text, m.input_format == "fasta" ? TextFormat::fasta : TextFormat::plain);
  }
  loaded.sequence.set_source_name(m.input_path);
  return loaded;
}

RunManifest manifest_from_options(const MineOptions& o) {
  RunManifest m;
  m.input_path = o.input;
  m.input_format = o.format;
  if (o.format == "csv") {
    m.csv_column = o.column;
    m.discretization = DiscretizationSpec{o.bins, "equal-width", 0.0, 0.0};
  }
  m.max_pattern_len = o.max_pattern_len;
  m.tree.level_cap = o.level_cap;
  m.tree.min_sup = o.min_sup;
  m.tree.monotonic_enabled = o.monotonic;
  m.tree.min_conf = o.tree_min_conf;
  auto& c = m.mining;
  c.conf_min = o.conf_min;
  c.surprise_min = o.surprise_min;
  c.tolerance = o.tolerance;
  c.d_max = o.d_max;
  c.min_seg_len = o.min_seg_len;
  c.mad = MadParams{o.mad_b, o.mad_k};
  c.mad_gate = !o.no_mad_gate;
  c.p_min = o.p_min;
  c.p_max = o.p_max;
  c.top_n = o.top;
  c.threads = o.threads;
  return m;
}

int cmd_mine(const MineOptions& o, std::ostream& out, std::ostream& err) {
  RunManifest m;
  if (!o.from_manifest.empty()) {
    auto j = nlohmann::json::parse(read_file(o.from_manifest));
    m = manifest_from_json(j.contains("manifest") ? j.at("manifest") : j);
    m.timings_ms.clear();
  } else {
    m = manifest_from_options(o);
  }

  Stopwatch clock;
  auto loaded = load_input(m);
  const auto& seq = loaded.sequence;
  m.discretization = loaded.discretization;
  m.sequence_length = seq.size();
  const double load_ms = clock.lap_ms();

  const std::size_t n = seq.size();
  if (!m.tree.level_cap) {
    m.tree.level_cap = std::min(default_level_cap(n), std::max<std::size_t>(m.max_pattern_len, 1));
  }
  // Validate the mining config before the tree is built.
  (void)resolve(m.mining, n);

  const auto tree = build_tree(seq, m.tree);
  const double tree_ms = clock.lap_ms();
  const auto pft = compute_pft(tree, m.mining.mad);
  const double pft_ms = clock.lap_ms();
  const auto records = enumerate_patterns(tree);
  const auto hits = mine_records(records, pft, n, m.mining);
  const double mine_ms = clock.lap_ms();

  if (!o.no_timings) {
    m.timings_ms = {{"load", load_ms}, {"build_tree", tree_ms}, {"pft", pft_ms},
                    {"mine", mine_ms}};
  }

  const auto& alphabet = seq.alphabet();
  if (!o.dump_tree_path.empty()) {
    auto f = open_out(o.dump_tree_path);
    dump_tree(f, tree, alphabet);
  }
  bool wrote = false;
  if (!o.out_csv.empty()) {
    auto f = open_out(o.out_csv);
    write_hits_csv(f, hits, alphabet);
    auto side = open_out(o.out_csv + ".manifest.json");
    side << to_json(m).dump(2) << '\n';
    wrote = true;
  }
  if (!o.out_pft.empty()) {
    auto f = open_out(o.out_pft);
    write_pft_csv(f, pft);
    wrote = true;
  }
  if (!o.out_json.empty()) {
    auto f = open_out(o.out_json);
    f << report_json(m, pft, hits, alphabet).dump(2) << '\n';
    wrote = true;
  }
  if (!wrote) write_hits_csv(out, hits, alphabet);
  err << hits.size() << " periodic outlier pattern(s) over N=" << n << '\n';
  return exit_ok;
}

int cmd_discretize(const DiscretizeOptions& o, std::ostream& out, std::ostream& err) {
  const auto values = read_csv_column(read_file(o.input), o.column);
  const auto d = discretize(values, o.bins);
  if (d.spec.observed_min == d.spec.observed_max) {
    err << "warning: column is constant; every value maps to '"
        << d.sequence.alphabet().glyph(Symbol{0}) << "'\n";
  }
  nlohmann::json side = {{"version", tool_version},
                         {"input", o.input},
                         {"column", o.column},
                         {"bin_count", d.spec.bin_count},
                         {"strategy", d.spec.strategy},
                         {"observed_min", d.spec.observed_min},
                         {"observed_max", d.spec.observed_max},
                         {"length", d.sequence.size()}};
  if (o.output.empty()) {
    out << d.sequence.text() << '\n';
    err << side.dump() << '\n';
  } else {
    auto f = open_out(o.output);
    f << d.sequence.text() << '\n';
    auto s = open_out(o.output + ".manifest.json");
    s << side.dump(2) << '\n';
  }
  return exit_ok;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream&) {
  bench::SweepConfig cfg;
  cfg.lengths = o.lengths;
  cfg.periods = o.periods;
  cfg.seed = o.seed;
  cfg.max_pattern_len = o.max_len;
  cfg.reps = o.reps;
  cfg.alphabet_size = o.alphabet;
  const auto rows = bench::run_sweep(cfg);
  if (o.output.empty()) {
    bench::write_timing_csv(out, rows);
  } else {
    auto f = open_out(o.output);
    bench::write_timing_csv(f, rows);
  }
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic outlier pattern mining over symbol sequences", "poptree"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine periodic outlier patterns");
  mine_cmd->add_option("--input,-i", mine.input, "Input file");
  mine_cmd->add_option("--format", mine.format, "plain | fasta | csv")
      ->check(CLI::IsMember({"plain", "fasta", "csv"}));
  mine_cmd->add_option("--column", mine.column, "CSV column name or 0-based index");
  mine_cmd->add_option("--bins", mine.bins, "Discretization bins for csv input")
      ->check(CLI::Range(1, 62));
  mine_cmd->add_option("--from-manifest", mine.from_manifest,
                       "Re-run from a report JSON or manifest sidecar");
  mine_cmd->add_option("--conf-min", mine.conf_min)->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_option("--surprise-min", mine.surprise_min)->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_option("--tolerance,-t", mine.tolerance, "Time tolerance in positions");
  mine_cmd->add_option("--d-max", mine.d_max, "Max gap between matched occurrences");
  mine_cmd->add_option("--min-seg-len", mine.min_seg_len, "Absolute minimum segment span");
  mine_cmd->add_option("--mad-k", mine.mad_k, "Multiplier on MAD in the candidate gate")
      ->check(CLI::PositiveNumber);
  mine_cmd->add_option("--mad-b", mine.mad_b, "MAD consistency constant")
      ->check(CLI::PositiveNumber);
  mine_cmd->add_flag("--no-mad-gate", mine.no_mad_gate,
                     "Mine every retained pattern (frequent periodic patterns)");
  mine_cmd->add_option("--p-min", mine.p_min)->check(CLI::PositiveNumber);
  mine_cmd->add_option("--p-max", mine.p_max);
  mine_cmd->add_option("--top", mine.top, "Report at most this many hits (0 = all)");
  mine_cmd->add_option("--threads", mine.threads)->check(CLI::PositiveNumber);
  mine_cmd->add_option("--min-sup", mine.min_sup)->check(CLI::PositiveNumber);
  mine_cmd->add_option("--level-cap", mine.level_cap, "Max pattern length q (default N/2)")
      ->check(CLI::PositiveNumber);
  mine_cmd->add_option("--max-pattern-len", mine.max_pattern_len,
                       "Upper bound on the default level cap")
      ->check(CLI::PositiveNumber);
  mine_cmd->add_flag("--monotonic", mine.monotonic, "Enable the monotonic confidence prune");
  mine_cmd->add_option("--tree-min-conf", mine.tree_min_conf, "min_conf of the monotonic prune")
      ->check(CLI::Range(0.0, 1.0));
  mine_cmd->add_option("--out-csv", mine.out_csv, "Hits CSV (manifest written alongside)");
  mine_cmd->add_option("--out-json", mine.out_json, "JSON report");
  mine_cmd->add_option("--out-pft", mine.out_pft, "Pattern frequency table CSV");
  mine_cmd->add_option("--dump-tree", mine.dump_tree_path, "Tree dump (pattern, support, positions)");
  mine_cmd->add_flag("--no-timings", mine.no_timings, "Omit stage timings from the manifest");

  DiscretizeOptions disc;
  auto* disc_cmd = app.add_subcommand("discretize", "Discretize a numeric CSV column");
  disc_cmd->add_option("--input,-i", disc.input, "CSV file")->required();
  disc_cmd->add_option("--column", disc.column, "Column name or 0-based index");
  disc_cmd->add_option("--bins", disc.bins)->check(CLI::Range(1, 62));
  disc_cmd->add_option("--output,-o", disc.output, "Symbol file (manifest written alongside)");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Time the tree miner against the oracle");
  bench_cmd->add_option("--lengths", bench_opts.lengths, "Series lengths")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--periods", bench_opts.periods, "Motif periods (0 = random)")
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench_opts.seed);
  bench_cmd->add_option("--max-len", bench_opts.max_len, "Max pattern length")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", bench_opts.reps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--alphabet", bench_opts.alphabet)->check(CLI::Range(1, 62));
  bench_cmd->add_option("--output,-o", bench_opts.output);

  std::vector<std::string> argv_store{"poptree"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << tool_version << '\n';
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*mine_cmd) {
      if (mine.input.empty() && mine.from_manifest.empty()) {
        err << "error: mine needs --input or --from-manifest\n";
        return exit_usage;
      }
      return cmd_mine(mine, out, err);
    }
    if (*disc_cmd) return cmd_discretize(disc, out, err);
    if (*bench_cmd) return cmd_bench(bench_opts, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::invalid_config ? exit_usage : exit_runtime;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad manifest: " << e.what() << '\n';
    return exit_runtime;
  }
  return exit_usage;
}

}  // namespace poptree::cli
