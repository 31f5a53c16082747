#pragma once

// Machine-readable run reports: JSON, flat CSV rows, and a short text form.

#include <array>
#include <charconv>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pmce/errors.hpp"
#include "pmce/graph.hpp"
#include "pmce/metrics.hpp"
#include "pmce/scheduler.hpp"

namespace pmce {

inline constexpr std::string_view kToolVersion = "1.0.0";

inline std::string_view to_string(RootLevel r) { return r == RootLevel::L1 ? "l1" : "l2"; }
inline std::string_view to_string(InducedMode m) { return m == InducedMode::Partial ? "ip" : "ipx"; }
inline std::string_view to_string(InducedChoice c) {
  switch (c) {
    case InducedChoice::Partial: return "ip";
    case InducedChoice::Full: return "ipx";
    case InducedChoice::Auto: return "auto";
  }
  return "auto";
}

inline RootLevel parse_root_level(std::string_view s) {
  if (s == "l1") return RootLevel::L1;
  if (s == "l2") return RootLevel::L2;
  throw ContractViolation("unknown root level '" + std::string(s) + "'");
}
inline InducedMode parse_induced_mode(std::string_view s) {
  if (s == "ip") return InducedMode::Partial;
  if (s == "ipx") return InducedMode::Full;
  throw ContractViolation("unknown induced mode '" + std::string(s) + "'");
}
inline InducedChoice parse_induced_choice(std::string_view s) {
  if (s == "auto") return InducedChoice::Auto;
  return parse_induced_mode(s) == InducedMode::Partial ? InducedChoice::Partial : InducedChoice::Full;
}

struct ConfigEcho {
  std::size_t workers = 1;
  RootLevel roots = RootLevel::L1;
  InducedChoice induced = InducedChoice::Auto;
  InducedMode induced_resolved = InducedMode::Full;
  bool worker_list = true;
  std::size_t donation_min_p = 10;

  friend bool operator==(const ConfigEcho&, const ConfigEcho&) = default;
};

struct PhaseTimes {
  double parse_seconds = 0.0;
  double ordering_seconds = 0.0;
  double traversal_seconds = 0.0;
  double phase1_seconds = 0.0;

  friend bool operator==(const PhaseTimes&, const PhaseTimes&) = default;
};

struct Report {
  std::string version{kToolVersion};
  std::string input;
  GraphStats stats;
  ConfigEcho config;
  std::uint64_t clique_count = 0;
  PhaseTimes times;
  MetricsReport metrics;

  friend bool operator==(const Report& a, const Report& b) {
    auto same_metrics = [](const MetricsReport& x, const MetricsReport& y) {
      return x.workers == y.workers && x.total_nodes == y.total_nodes &&
             x.max_nodes == y.max_nodes && x.avg_nodes == y.avg_nodes &&
             x.load_ratio == y.load_ratio && x.category_seconds == y.category_seconds &&
             x.category_share == y.category_share && x.donations_made == y.donations_made &&
             x.donations_received == y.donations_received && x.roots_claimed == y.roots_claimed;
    };
    return a.version == b.version && a.input == b.input && a.stats == b.stats &&
           a.config == b.config && a.clique_count == b.clique_count && a.times == b.times &&
           same_metrics(a.metrics, b.metrics);
  }
};

inline ConfigEcho echo(const RunConfig& cfg, InducedMode resolved) {
  return {cfg.workers, cfg.roots, cfg.induced, resolved, cfg.worker_list, cfg.donation_min_p};
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["version"] = r.version;
  j["input"] = r.input;
  j["stats"] = {{"n", r.stats.n},
                {"m", r.stats.m},
                {"max_degree", r.stats.max_degree},
                {"degeneracy", r.stats.degeneracy}};
  j["config"] = {{"workers", r.config.workers},
                 {"roots", to_string(r.config.roots)},
                 {"induced", to_string(r.config.induced)},
                 {"induced_resolved", to_string(r.config.induced_resolved)},
                 {"worker_list", r.config.worker_list},
                 {"donation_min_p", r.config.donation_min_p}};
  j["clique_count"] = r.clique_count;
  j["times"] = {{"parse_seconds", r.times.parse_seconds},
                {"ordering_seconds", r.times.ordering_seconds},
                {"traversal_seconds", r.times.traversal_seconds},
                {"phase1_seconds", r.times.phase1_seconds}};
  auto& m = j["metrics"];
  m["workers"] = r.metrics.workers;
  m["total_nodes"] = r.metrics.total_nodes;
  m["max_nodes"] = r.metrics.max_nodes;
  m["avg_nodes"] = r.metrics.avg_nodes;
  m["load_ratio_per_worker"] = r.metrics.load_ratio;
  m["donations_made"] = r.metrics.donations_made;
  m["donations_received"] = r.metrics.donations_received;
  m["roots_claimed"] = r.metrics.roots_claimed;
  for (std::size_t c = 0; c < kTimeCategories; ++c) {
    const std::string name(kTimeCategoryNames[c]);
    m["category_seconds"][name] = r.metrics.category_seconds[c];
    m["category_share"][name] = r.metrics.category_share[c];
  }
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.version = j.at("version").get<std::string>();
  r.input = j.at("input").get<std::string>();
  const auto& s = j.at("stats");
  r.stats = {s.at("n").get<std::size_t>(), s.at("m").get<std::size_t>(),
             s.at("max_degree").get<std::size_t>(), s.at("degeneracy").get<std::size_t>()};
  const auto& c = j.at("config");
  r.config.workers = c.at("workers").get<std::size_t>();
  r.config.roots = parse_root_level(c.at("roots").get<std::string>());
  r.config.induced = parse_induced_choice(c.at("induced").get<std::string>());
  r.config.induced_resolved = parse_induced_mode(c.at("induced_resolved").get<std::string>());
  r.config.worker_list = c.at("worker_list").get<bool>();
  r.config.donation_min_p = c.at("donation_min_p").get<std::size_t>();
  r.clique_count = j.at("clique_count").get<std::uint64_t>();
  const auto& t = j.at("times");
  r.times = {t.at("parse_seconds").get<double>(), t.at("ordering_seconds").get<double>(),
             t.at("traversal_seconds").get<double>(), t.at("phase1_seconds").get<double>()};
  const auto& m = j.at("metrics");
  r.metrics.workers = m.at("workers").get<std::size_t>();
  r.metrics.total_nodes = m.at("total_nodes").get<std::uint64_t>();
  r.metrics.max_nodes = m.at("max_nodes").get<std::uint64_t>();
  r.metrics.avg_nodes = m.at("avg_nodes").get<double>();
  r.metrics.load_ratio = m.at("load_ratio_per_worker").get<double>();
  r.metrics.donations_made = m.at("donations_made").get<std::uint64_t>();
  r.metrics.donations_received = m.at("donations_received").get<std::uint64_t>();
  r.metrics.roots_claimed = m.at("roots_claimed").get<std::uint64_t>();
  for (std::size_t k = 0; k < kTimeCategories; ++k) {
    const std::string name(kTimeCategoryNames[k]);
    r.metrics.category_seconds[k] = m.at("category_seconds").at(name).get<double>();
    r.metrics.category_share[k] = m.at("category_share").at(name).get<double>();
  }
  return r;
}

// ---------------------------------------------------------------------------
// CSV: one header, one flat row per report.

namespace detail {

inline std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), ptr);
}

inline double parse_double(const std::string& s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ContractViolation("malformed number '" + s + "' in CSV row");
  return x;
}

inline std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ContractViolation("malformed integer '" + s + "' in CSV row");
  return x;
}

inline std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline std::vector<std::pair<std::string, std::string>> csv_fields(const Report& r) {
  std::vector<std::pair<std::string, std::string>> f = {
      {"version", r.version},
      {"input", r.input},
      {"n", std::to_string(r.stats.n)},
      {"m", std::to_string(r.stats.m)},
      {"max_degree", std::to_string(r.stats.max_degree)},
      {"degeneracy", std::to_string(r.stats.degeneracy)},
      {"workers", std::to_string(r.config.workers)},
      {"roots", std::string(to_string(r.config.roots))},
      {"induced", std::string(to_string(r.config.induced))},
      {"induced_resolved", std::string(to_string(r.config.induced_resolved))},
      {"worker_list", r.config.worker_list ? "on" : "off"},
      {"donation_min_p", std::to_string(r.config.donation_min_p)},
      {"clique_count", std::to_string(r.clique_count)},
      {"parse_seconds", format_double(r.times.parse_seconds)},
      {"ordering_seconds", format_double(r.times.ordering_seconds)},
      {"traversal_seconds", format_double(r.times.traversal_seconds)},
      {"phase1_seconds", format_double(r.times.phase1_seconds)},
      {"metric_workers", std::to_string(r.metrics.workers)},
      {"total_nodes", std::to_string(r.metrics.total_nodes)},
      {"max_nodes", std::to_string(r.metrics.max_nodes)},
      {"avg_nodes", format_double(r.metrics.avg_nodes)},
      {"load_ratio_per_worker", format_double(r.metrics.load_ratio)},
      {"donations_made", std::to_string(r.metrics.donations_made)},
      {"donations_received", std::to_string(r.metrics.donations_received)},
      {"roots_claimed", std::to_string(r.metrics.roots_claimed)},
  };
  for (std::size_t c = 0; c < kTimeCategories; ++c)
    f.emplace_back("seconds_" + std::string(kTimeCategoryNames[c]), format_double(r.metrics.category_seconds[c]));
  for (std::size_t c = 0; c < kTimeCategories; ++c)
    f.emplace_back("share_" + std::string(kTimeCategoryNames[c]), format_double(r.metrics.category_share[c]));
  return f;
}

}  // namespace detail

inline std::string csv_header() {
  std::string out;
  for (const auto& [k, v] : detail::csv_fields(Report{})) {
    if (!out.empty()) out += ',';
    out += k;
  }
  return out;
}

inline std::string to_csv_row(const Report& r) {
  std::string out;
  bool first = true;
  for (const auto& [k, v] : detail::csv_fields(r)) {
    if (!first) out += ',';
    first = false;
    out += detail::csv_quote(v);
  }
  return out;
}

inline Report report_from_csv(std::string_view header, std::string_view row) {
  const auto keys = detail::csv_split(header);
  const auto vals = detail::csv_split(row);
  if (keys.size() != vals.size()) throw ContractViolation("CSV row does not match header");
  std::map<std::string, std::string> kv;
  for (std::size_t i = 0; i < keys.size(); ++i) kv[keys[i]] = vals[i];
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ContractViolation("CSV column '" + k + "' missing");
    return it->second;
  };
  using detail::parse_double;
  using detail::parse_u64;
  Report r;
  r.version = get("version");
  r.input = get("input");
  r.stats = {parse_u64(get("n")), parse_u64(get("m")), parse_u64(get("max_degree")),
             parse_u64(get("degeneracy"))};
  r.config.workers = parse_u64(get("workers"));
  r.config.roots = parse_root_level(get("roots"));
  r.config.induced = parse_induced_choice(get("induced"));
  r.config.induced_resolved = parse_induced_mode(get("induced_resolved"));
  r.config.worker_list = get("worker_list") == "on";
  r.config.donation_min_p = parse_u64(get("donation_min_p"));
  r.clique_count = parse_u64(get("clique_count"));
  r.times = {parse_double(get("parse_seconds")), parse_double(get("ordering_seconds")),
             parse_double(get("traversal_seconds")), parse_double(get("phase1_seconds"))};
  r.metrics.workers = parse_u64(get("metric_workers"));
  r.metrics.total_nodes = parse_u64(get("total_nodes"));
  r.metrics.max_nodes = parse_u64(get("max_nodes"));
  r.metrics.avg_nodes = parse_double(get("avg_nodes"));
  r.metrics.load_ratio = parse_double(get("load_ratio_per_worker"));
  r.metrics.donations_made = parse_u64(get("donations_made"));
  r.metrics.donations_received = parse_u64(get("donations_received"));
  r.metrics.roots_claimed = parse_u64(get("roots_claimed"));
  for (std::size_t c = 0; c < kTimeCategories; ++c) {
    r.metrics.category_seconds[c] = parse_double(get("seconds_" + std::string(kTimeCategoryNames[c])));
    r.metrics.category_share[c] = parse_double(get("share_" + std::string(kTimeCategoryNames[c])));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text

inline void write_text(std::ostream& out, const Report& r) {
  out << "input: " << r.input << '\n'
      << "vertices: " << r.stats.n << "  edges: " << r.stats.m
      << "  max degree: " << r.stats.max_degree << "  degeneracy: " << r.stats.degeneracy << '\n'
      << "config: roots=" << to_string(r.config.roots) << " induced=" << to_string(r.config.induced)
      << " (" << to_string(r.config.induced_resolved) << ") workers=" << r.config.workers
      << " worker-list=" << (r.config.worker_list ? "on" : "off")
      << " donation-min-p=" << r.config.donation_min_p << '\n'
      << "cliques: " << r.clique_count << '\n'
      << std::fixed << std::setprecision(6) << "parse: " << r.times.parse_seconds
      << " s  ordering: " << r.times.ordering_seconds << " s  traversal: " << r.times.traversal_seconds
      << " s\n"
      << "nodes: " << r.metrics.total_nodes << "  load ratio (max/avg per worker): "
      << std::setprecision(3) << r.metrics.load_ratio << "  donations: " << r.metrics.donations_made
      << " made / " << r.metrics.donations_received << " received\n";
  out.unsetf(std::ios::floatfield);
}

}  // namespace pmce
