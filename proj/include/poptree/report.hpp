#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "poptree/mining.hpp"

namespace poptree {

inline constexpr const char* tool_version = "0.1.0";

inline constexpr const char* hits_csv_header = "count,period,pattern,start_pos,end_pos,conf,surp";
inline constexpr const char* pft_csv_header = "pattern_length,count,mean,median,mad";

// Everything needed to regenerate a report from its input file.
struct RunManifest {
  std::string input_path;
  std::string input_format;  // plain | fasta | csv
  std::optional<std::string> csv_column;
  std::optional<DiscretizationSpec> discretization;
  std::size_t sequence_length = 0;
  std::size_t max_pattern_len = 32;
  TreeConstraints tree;
  MiningConfig mining;
  std::string version = tool_version;
  std::vector<std::pair<std::string, double>> timings_ms;
};

nlohmann::json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

// Fixed 4-decimal rendering used for conf/surp everywhere.
std::string fixed4(double v);

void write_hits_csv(std::ostream& out, std::span<const PeriodicHit> hits,
                    const Alphabet& alphabet);
void write_pft_csv(std::ostream& out, const FrequencyTable& pft);

// {"manifest": ..., "pft": [...], "hits": [...]}; hit rows carry the same
// fields and rounding as the CSV.
nlohmann::json report_json(const RunManifest& manifest, const FrequencyTable& pft,
                           std::span<const PeriodicHit> hits, const Alphabet& alphabet);

}  // namespace poptree
