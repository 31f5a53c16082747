// pmce: count, verify, generate and benchmark maximal clique enumeration.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmce/pmce.hpp"
#include "pmce/report.hpp"

namespace {

using namespace pmce;
using clock_type = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

/// Raised for unreadable inputs and unwritable outputs.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct EngineFlags {
  std::string roots = "l1";
  std::string induced = "auto";
  std::size_t workers = default_workers();
  std::string worker_list = "on";
  std::size_t donation_min_p = 10;
  bool time_breakdown = false;

  void add_to(CLI::App& app) {
    app.add_option("--roots", roots, "Independent roots: per vertex (l1) or per edge (l2)")
        ->check(CLI::IsMember({"l1", "l2"}))
        ->capture_default_str();
    app.add_option("--induced", induced, "Induced subgraph: partial (ip), full (ipx) or auto")
        ->check(CLI::IsMember({"ip", "ipx", "auto"}))
        ->capture_default_str();
    app.add_option("--workers", workers, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--worker-list", worker_list, "Branch donation to idle workers")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    app.add_option("--donation-min-p", donation_min_p,
                   "Smallest candidate set worth donating")
        ->capture_default_str();
    app.add_flag("--time-breakdown", time_breakdown, "Record per-category worker time");
  }

  RunConfig config() const {
    RunConfig cfg;
    cfg.workers = workers;
    cfg.roots = parse_root_level(roots);
    cfg.induced = parse_induced_choice(induced);
    cfg.worker_list = worker_list == "on";
    cfg.donation_min_p = donation_min_p;
    cfg.time_breakdown = time_breakdown;
    return cfg;
  }
};

struct LoadedGraph {
  PreparedGraph prepared;
  double parse_seconds = 0.0;
  double ordering_seconds = 0.0;
};

LoadedGraph load(const std::string& path, int base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  LoadedGraph lg;
  auto t0 = clock_type::now();
  Graph g = parse_edge_list(in, ParseOptions{base});
  lg.parse_seconds = seconds_since(t0);
  t0 = clock_type::now();
  lg.prepared = prepare(g);
  lg.ordering_seconds = seconds_since(t0);
  return lg;
}

Report make_report(const std::string& input, const LoadedGraph& lg, const RunConfig& cfg,
                   const RunResult& r) {
  Report rep;
  rep.input = input;
  rep.stats = lg.prepared.stats;
  rep.config = echo(cfg, r.induced_mode);
  rep.clique_count = r.clique_count;
  rep.times = {lg.parse_seconds, lg.ordering_seconds, r.traversal_seconds, r.phase1_seconds};
  rep.metrics = r.metrics();
  return rep;
}

void emit(std::ostream& out, const Report& rep, const std::string& format) {
  if (format == "json") {
    out << to_json(rep).dump(2) << '\n';
  } else if (format == "csv") {
    out << csv_header() << '\n' << to_csv_row(rep) << '\n';
  } else {
    write_text(out, rep);
  }
}

void write_cliques(const std::string& path, const Graph& g, const CliqueSink& sink) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  const auto labels = g.labels();
  std::vector<std::int64_t> row;
  for (const auto& c : sink.collected()) {
    row.clear();
    for (vertex_t v : c) row.push_back(labels[v]);
    std::sort(row.begin(), row.end());
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << '\n';
  }
}

// ---------------------------------------------------------------------------

struct CountCmd {
  std::string path;
  EngineFlags engine;
  std::string format = "text";
  std::string list_path;
  std::size_t list_limit = 1000;
  int base = 0;

  int operator()() const {
    const LoadedGraph lg = load(path, base);
    const RunConfig cfg = engine.config();
    CliqueSink sink = list_path.empty() ? CliqueSink::counting() : CliqueSink::collecting(list_limit);
    const RunResult r = run(lg.prepared.graph, cfg, sink);
    emit(std::cout, make_report(path, lg, cfg, r), format);
    if (!list_path.empty()) write_cliques(list_path, lg.prepared.graph, sink);
    return kExitOk;
  }
};

struct OracleCheckCmd {
  std::size_t n = 12;
  double p = 0.5;
  std::size_t seeds = 10;
  std::uint64_t seed = 0;
  std::size_t workers = 4;
  bool corrupt_edge = false;

  static std::string describe(const RunConfig& cfg) {
    std::ostringstream s;
    s << "--roots " << to_string(cfg.roots) << " --induced " << to_string(cfg.induced)
      << " --worker-list " << (cfg.worker_list ? "on" : "off") << " --workers " << cfg.workers;
    return s.str();
  }

  /// Toggles the first vertex pair: a different graph with a different
  /// clique set, used as a negative control.
  static Graph corrupt(const Graph& g) {
    if (g.num_vertices() < 2) return g;
    std::vector<Edge> edges(g.edge_list().begin(), g.edge_list().end());
    auto it = std::find(edges.begin(), edges.end(), Edge{0, 1});
    if (it != edges.end()) {
      edges.erase(it);
    } else {
      edges.emplace_back(0, 1);
    }
    Graph c = Graph::from_edges(g.num_vertices(), edges);
    c.build_edge_list();
    return c;
  }

  int operator()() const {
    if (n > kOracleMaxVertices) throw ContractViolation("oracle-check needs n <= 24");
    std::size_t runs = 0;
    for (std::size_t k = 0; k < seeds; ++k) {
      const std::uint64_t s = seed + k;
      const PreparedGraph pg = prepare(gen::gnp(n, p, s));
      const auto truth = oracle_enumerate(pg.graph);
      const Graph tested = corrupt_edge ? corrupt(pg.graph) : pg.graph;
      auto fail = [&](const std::string& what, std::size_t got) {
        std::cout << "FAIL seed=" << s << " " << what << ": " << got << " cliques, oracle "
                  << truth.size() << "\n"
                  << "reproduce: pmce oracle-check --n " << n << " --p " << p
                  << " --seeds 1 --seed " << s << (corrupt_edge ? " --corrupt-edge" : "") << '\n';
        return kExitVerify;
      };
      for (auto roots : {RootLevel::L1, RootLevel::L2})
        for (auto induced : {InducedChoice::Partial, InducedChoice::Full})
          for (bool wl : {true, false}) {
            RunConfig cfg;
            cfg.workers = workers;
            cfg.roots = roots;
            cfg.induced = induced;
            cfg.worker_list = wl;
            cfg.donation_min_p = 0;
            CliqueSink sink = CliqueSink::collecting();
            run(tested, cfg, sink);
            ++runs;
            if (sink.collected() != truth) return fail(describe(cfg), sink.collected().size());
          }
      CliqueSink basic = CliqueSink::collecting();
      bk_basic(tested, basic);
      basic.canonicalize();
      ++runs;
      if (basic.collected() != truth) return fail("bk_basic", basic.collected().size());
    }
    std::cout << "PASS " << seeds << " seeds, " << runs << " runs match the oracle (n=" << n
              << ", p=" << p << ")\n";
    return kExitOk;
  }
};

struct GenCmd {
  std::string kind;
  std::string out_path;
  std::size_t n = 100;
  double p = 0.1;
  std::size_t parts = 4;
  std::uint64_t seed = 1;
  std::size_t background = 10'000;
  double avg_degree = 4.0;
  std::size_t community = 40;
  std::string community_kind = "cocktail";
  double community_p = 0.9;

  int operator()() const {
    Graph g;
    if (kind == "gnp") {
      g = gen::gnp(n, p, seed);
    } else if (kind == "moon_moser") {
      g = gen::moon_moser(parts);
    } else {
      gen::SkewParams sp;
      sp.background_vertices = background;
      sp.background_avg_degree = avg_degree;
      sp.community_size = community;
      sp.community = community_kind == "random" ? gen::CommunityKind::Random
                                                : gen::CommunityKind::CocktailParty;
      sp.community_p = community_p;
      sp.seed = seed;
      g = gen::skew(sp);
    }
    if (out_path.empty() || out_path == "-") {
      write_edge_list(std::cout, g);
    } else {
      std::ofstream out(out_path);
      if (!out) throw IoError("cannot write '" + out_path + "'");
      write_edge_list(out, g);
    }
    return kExitOk;
  }
};

struct BenchCmd {
  std::string path;
  std::vector<std::size_t> workers_list = {default_workers()};
  std::vector<std::string> roots_list = {"l1", "l2"};
  std::vector<std::string> induced_list = {"ip", "ipx"};
  std::string worker_list = "on";
  std::size_t donation_min_p = 10;
  std::size_t repeats = 3;
  std::string format = "csv";
  int base = 0;

  int operator()() const {
    const LoadedGraph lg = load(path, base);
    const InducedMode auto_mode = resolve_induced_mode(lg.prepared.graph, InducedChoice::Auto);
    std::vector<Report> rows;
    for (std::size_t w : workers_list)
      for (const auto& rl : roots_list)
        for (const auto& im : induced_list) {
          RunConfig cfg;
          cfg.workers = w;
          cfg.roots = parse_root_level(rl);
          cfg.induced = parse_induced_choice(im);
          cfg.worker_list = worker_list == "on";
          cfg.donation_min_p = donation_min_p;
          std::optional<Report> best;
          for (std::size_t k = 0; k < std::max<std::size_t>(repeats, 1); ++k) {
            CliqueSink sink = CliqueSink::counting();
            const RunResult r = run(lg.prepared.graph, cfg, sink);
            Report rep = make_report(path, lg, cfg, r);
            if (!best || rep.times.traversal_seconds < best->times.traversal_seconds) best = rep;
          }
          rows.push_back(*best);
        }

    for (const auto& r : rows)
      if (r.clique_count != rows.front().clique_count) {
        std::cerr << "error: configurations disagree on the clique count\n";
        return kExitVerify;
      }

    // Heuristic: L1 roots with the Auto induced mode, against the fastest row
    // sharing its worker count.
    nlohmann::ordered_json summary = nlohmann::ordered_json::array();
    for (std::size_t w : workers_list) {
      const Report* fastest = nullptr;
      const Report* chosen = nullptr;
      for (const auto& r : rows) {
        if (r.config.workers != w) continue;
        if (!fastest || r.times.traversal_seconds < fastest->times.traversal_seconds) fastest = &r;
        if (r.config.roots == RootLevel::L1 && r.config.induced_resolved == auto_mode) chosen = &r;
      }
      nlohmann::ordered_json s;
      s["workers"] = w;
      s["ratio_max_degree_over_degeneracy"] =
          lg.prepared.stats.degeneracy == 0
              ? 0.0
              : static_cast<double>(lg.prepared.stats.max_degree) /
                    static_cast<double>(lg.prepared.stats.degeneracy);
      s["heuristic"] = "l1+" + std::string(to_string(auto_mode));
      s["best"] = fastest ? std::string(to_string(fastest->config.roots)) + "+" +
                                std::string(to_string(fastest->config.induced_resolved))
                          : "";
      if (chosen && fastest && fastest->times.traversal_seconds > 0.0)
        s["heuristic_slowdown"] = chosen->times.traversal_seconds / fastest->times.traversal_seconds;
      else
        s["heuristic_slowdown"] = nullptr;
      summary.push_back(std::move(s));
    }

    if (format == "json") {
      nlohmann::ordered_json j;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& r : rows) j["rows"].push_back(to_json(r));
      j["heuristic"] = summary;
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << csv_header() << '\n';
      for (const auto& r : rows) std::cout << to_csv_row(r) << '\n';
      for (const auto& s : summary) std::cout << "# heuristic " << s.dump() << '\n';
    }
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact maximal clique enumeration with parallel Bron-Kerbosch"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pmce::kToolVersion));

  CountCmd count;
  auto* c = app.add_subcommand("count", "Count maximal cliques of an edge-list or MatrixMarket file");
  c->add_option("path", count.path, "Input graph")->required();
  count.engine.add_to(*c);
  c->add_option("--format", count.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  c->add_option("--list-cliques", count.list_path, "Write cliques (original ids) to this file");
  c->add_option("--list-limit", count.list_limit, "Most cliques written by --list-cliques")
      ->capture_default_str();
  c->add_option("--base", count.base, "Smallest vertex id in the file")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();

  OracleCheckCmd oracle;
  auto* o = app.add_subcommand("oracle-check", "Compare every configuration against brute force on G(n,p)");
  o->add_option("--n", oracle.n, "Vertices (at most 24)")->check(CLI::Range(0, 24))->capture_default_str();
  o->add_option("--p", oracle.p, "Edge probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  o->add_option("--seeds", oracle.seeds, "Number of graphs")->capture_default_str();
  o->add_option("--seed", oracle.seed, "First seed")->capture_default_str();
  o->add_option("--workers", oracle.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  o->add_flag("--corrupt-edge", oracle.corrupt_edge)->group("");

  GenCmd gen;
  auto* g = app.add_subcommand("gen", "Write a synthetic graph as an edge list");
  g->add_option("kind", gen.kind, "gnp, moon_moser or skew")
      ->required()
      ->check(CLI::IsMember({"gnp", "moon_moser", "skew"}));
  g->add_option("--out", gen.out_path, "Output file (stdout when omitted)");
  g->add_option("--n", gen.n, "gnp: vertices")->capture_default_str();
  g->add_option("--p", gen.p, "gnp: edge probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  g->add_option("--parts", gen.parts, "moon_moser: number of 3-vertex parts")->capture_default_str();
  g->add_option("--seed", gen.seed, "gnp, skew: seed")->capture_default_str();
  g->add_option("--background", gen.background, "skew: background vertices")->capture_default_str();
  g->add_option("--avg-degree", gen.avg_degree, "skew: background average degree")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  g->add_option("--community", gen.community, "skew: community size")->capture_default_str();
  g->add_option("--community-kind", gen.community_kind, "skew: cocktail or random")
      ->check(CLI::IsMember({"cocktail", "random"}))
      ->capture_default_str();
  g->add_option("--community-p", gen.community_p, "skew: random community density")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  BenchCmd bench;
  auto* b = app.add_subcommand("bench", "Time a grid of configurations on one graph");
  b->add_option("path", bench.path, "Input graph")->required();
  b->add_option("--workers-list", bench.workers_list, "Worker counts")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  b->add_option("--roots-list", bench.roots_list, "Root levels")
      ->delimiter(',')
      ->check(CLI::IsMember({"l1", "l2"}));
  b->add_option("--induced-list", bench.induced_list, "Induced modes")
      ->delimiter(',')
      ->check(CLI::IsMember({"ip", "ipx"}));
  b->add_option("--worker-list", bench.worker_list, "Branch donation")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  b->add_option("--donation-min-p", bench.donation_min_p)->capture_default_str();
  b->add_option("--repeats", bench.repeats, "Runs per configuration; the fastest is kept")
      ->capture_default_str();
  b->add_option("--format", bench.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  b->add_option("--base", bench.base)->check(CLI::IsMember({0, 1}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c->parsed()) return count();
    if (o->parsed()) return oracle();
    if (g->parsed()) return gen();
    if (b->parsed()) return bench();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
