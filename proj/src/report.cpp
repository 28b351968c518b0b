#include "poptree/report.hpp"

#include <cstdio>
#include <ostream>

namespace poptree {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

json to_json(const RunManifest& m) {
  json j;
  j["version"] = m.version;
  j["input"] = {{"path", m.input_path},
                {"format", m.input_format},
                {"csv_column", optional_json(m.csv_column)}};
  if (m.discretization) {
    const auto& d = *m.discretization;
    j["discretization"] = {{"bin_count", d.bin_count},
                           {"strategy", d.strategy},
                           {"observed_min", d.observed_min},
                           {"observed_max", d.observed_max}};
  } else {
    j["discretization"] = nullptr;
  }
  j["sequence_length"] = m.sequence_length;
  j["tree"] = {{"level_cap", optional_json(m.tree.level_cap)},
               {"max_pattern_len", m.max_pattern_len},
               {"min_conf", m.tree.min_conf},
               {"min_sup", m.tree.min_sup},
               {"monotonic", m.tree.monotonic_enabled}};
  const auto& c = m.mining;
  j["mining"] = {{"conf_min", c.conf_min},
                 {"surprise_min", c.surprise_min},
                 {"tolerance", c.tolerance},
                 {"d_max", optional_json(c.d_max)},
                 {"min_seg_len", optional_json(c.min_seg_len)},
                 {"mad_b", c.mad.b},
                 {"mad_k", c.mad.k},
                 {"mad_gate", c.mad_gate},
                 {"p_min", c.p_min},
                 {"p_max", optional_json(c.p_max)},
                 {"top_n", c.top_n},
                 {"threads", c.threads}};
  if (!m.timings_ms.empty()) {
    json t = json::object();
    for (const auto& [stage, ms] : m.timings_ms) t[stage] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.version = j.at("version").get<std::string>();
  const auto& in = j.at("input");
  m.input_path = in.at("path").get<std::string>();
  m.input_format = in.at("format").get<std::string>();
  m.csv_column = optional_from<std::string>(in, "csv_column");
  if (!j.at("discretization").is_null()) {
    const auto& d = j.at("discretization");
    m.discretization = DiscretizationSpec{d.at("bin_count").get<std::size_t>(),
                                          d.at("strategy").get<std::string>(),
                                          d.at("observed_min").get<double>(),
                                          d.at("observed_max").get<double>()};
  }
  m.sequence_length = j.at("sequence_length").get<std::size_t>();
  const auto& t = j.at("tree");
  m.tree.level_cap = optional_from<std::size_t>(t, "level_cap");
  m.max_pattern_len = t.at("max_pattern_len").get<std::size_t>();
  m.tree.min_conf = t.at("min_conf").get<double>();
  m.tree.min_sup = t.at("min_sup").get<std::size_t>();
  m.tree.monotonic_enabled = t.at("monotonic").get<bool>();
  const auto& c = j.at("mining");
  m.mining.conf_min = c.at("conf_min").get<double>();
  m.mining.surprise_min = c.at("surprise_min").get<double>();
  m.mining.tolerance = c.at("tolerance").get<std::size_t>();
  m.mining.d_max = optional_from<std::size_t>(c, "d_max");
  m.mining.min_seg_len = optional_from<std::size_t>(c, "min_seg_len");
  m.mining.mad.b = c.at("mad_b").get<double>();
  m.mining.mad.k = c.at("mad_k").get<double>();
  m.mining.mad_gate = c.at("mad_gate").get<bool>();
  m.mining.p_min = c.at("p_min").get<std::size_t>();
  m.mining.p_max = optional_from<std::size_t>(c, "p_max");
  m.mining.top_n = c.at("top_n").get<std::size_t>();
  m.mining.threads = c.at("threads").get<std::size_t>();
  if (j.contains("timings_ms")) {
    for (const auto& [stage, ms] : j.at("timings_ms").items()) {
      m.timings_ms.emplace_back(stage, ms.get<double>());
    }
  }
  return m;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

void write_hits_csv(std::ostream& out, std::span<const PeriodicHit> hits,
                    const Alphabet& alphabet) {
  out << hits_csv_header << '\n';
  for (const auto& h : hits) {
    out << h.count << ',' << h.period << ',' << render(h.pattern, alphabet) << ',' << h.start
        << ',' << h.end << ',' << fixed4(h.confidence) << ',' << fixed4(h.surprise) << '\n';
  }
}

void write_pft_csv(std::ostream& out, const FrequencyTable& pft) {
  out << pft_csv_header << '\n';
  for (const auto& row : pft) {
    out << row.pattern_len << ',' << row.n_patterns << ',' << fixed4(row.mean) << ','
        << fixed4(row.median) << ',' << fixed4(row.mad) << '\n';
  }
}

json report_json(const RunManifest& manifest, const FrequencyTable& pft,
                 std::span<const PeriodicHit> hits, const Alphabet& alphabet) {
  json j;
  j["manifest"] = to_json(manifest);
  j["pft"] = json::array();
  for (const auto& row : pft) {
    j["pft"].push_back({{"pattern_length", row.pattern_len},
                        {"count", row.n_patterns},
                        {"mean", row.mean},
                        {"median", row.median},
                        {"mad", row.mad}});
  }
  j["hits"] = json::array();
  for (const auto& h : hits) {
    j["hits"].push_back({{"count", h.count},
                         {"period", h.period},
                         {"pattern", render(h.pattern, alphabet)},
                         {"start_pos", h.start},
                         {"end_pos", h.end},
                         {"conf", std::stod(fixed4(h.confidence))},
                         {"surp", std::stod(fixed4(h.surprise))}});
  }
  return j;
}

}  // namespace poptree
