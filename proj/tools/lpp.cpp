// Operator entry points: responder daemon, querier, graph generation, the
// plaintext oracle, leakage tables, experiments, and benchmarks.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpp/bench.hpp"
#include "lpp/errors.hpp"
#include "lpp/graph.hpp"
#include "lpp/leakage.hpp"
#include "lpp/protocol.hpp"
#include "lpp/random.hpp"
#include "lpp/transport.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitHalted = 2;  // direct-neighbour halt: an outcome, not an error

lpp::Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lpp::ConfigError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return lpp::load_edge_list(buf.str());
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw lpp::ConfigError("cannot open output file: " + out_path);
  out << content;
}

// default parameter set: --params flag > LPP_PARAMS env > toy
std::string default_params_name() {
  const char* env = std::getenv("LPP_PARAMS");
  return env && *env ? env : "toy";
}

std::pair<std::string, std::uint16_t> split_host_port(const std::string& s) {
  auto pos = s.rfind(':');
  if (pos == std::string::npos)
    throw lpp::ConfigError("expected HOST:PORT, got " + s);
  unsigned long port = std::stoul(s.substr(pos + 1));
  if (port > 0xffff) throw lpp::ConfigError("port out of range: " + s);
  return {s.substr(0, pos), static_cast<std::uint16_t>(port)};
}

int cmd_serve(const std::string& graph_path, const std::string& listen,
              const std::string& params_name, const std::string& mode_str,
              bool once) {
  lpp::Graph graph = load_graph_file(graph_path);
  lpp::params_name_from_string(params_name);  // validate early
  std::optional<lpp::Mode> require_mode;
  if (!mode_str.empty()) require_mode = lpp::mode_from_string(mode_str);

  auto [host, port] = split_host_port(listen);
  lpp::TcpListener listener(host, port);
  std::cout << "listening on " << host << ":" << listener.port() << std::endl;
  for (;;) {
    auto conn = listener.accept();
    if (once) {
      lpp::SystemRandom rng;
      auto res = lpp::run_responder(graph, *conn, rng, require_mode);
      if (!res.error.empty()) std::cerr << "session: " << res.error << "\n";
      return kExitOk;
    }
    std::thread([conn = std::move(conn), &graph, require_mode]() mutable {
      lpp::SystemRandom rng;
      auto res = lpp::run_responder(graph, *conn, rng, require_mode);
      if (!res.error.empty()) std::cerr << "session: " << res.error << "\n";
    }).detach();
  }
}

void print_breakdown(const lpp::CnBreakdown& b) {
  std::printf("cn=%u local1=%u local2=%u cr1=%u cr2=%u overlap=%u\n", b.cn,
              b.local1, b.local2, b.crossover1, b.crossover2, b.overlap);
}

json breakdown_json(const lpp::CnBreakdown& b) {
  return json{{"cn", b.cn},         {"local1", b.local1},
              {"local2", b.local2}, {"crossover1", b.crossover1},
              {"crossover2", b.crossover2}, {"overlap", b.overlap}};
}

int cmd_query(const std::string& graph_path, const std::string& connect,
              const std::string& x_id, const std::string& y_id,
              const std::string& params_name, const std::string& mode_str,
              bool as_json) {
  if (x_id == y_id) throw lpp::ConfigError("--x and --y must differ");
  lpp::Graph graph = load_graph_file(graph_path);
  lpp::QuerySpec spec;
  spec.x_id = x_id;
  spec.y_id = y_id;
  spec.mode = lpp::mode_from_string(mode_str);
  spec.params_name = lpp::params_name_from_string(params_name);

  auto [host, port] = split_host_port(connect);
  auto transport = lpp::tcp_connect(host, port);
  lpp::SystemRandom rng;
  auto res = lpp::run_querier(spec, graph, *transport, rng);

  switch (res.outcome) {
    case lpp::SessionOutcome::completed: {
      json j;
      if (res.breakdown) {
        j = breakdown_json(*res.breakdown);
      } else {
        j = json{{"cn", *res.cn}};  // he mode reveals the cardinality only
      }
      j["outcome"] = "completed";
      if (as_json) {
        std::cout << j.dump() << "\n";
      } else if (res.breakdown) {
        print_breakdown(*res.breakdown);
      } else {
        std::printf("cn=%u\n", *res.cn);
      }
      return kExitOk;
    }
    case lpp::SessionOutcome::halted_direct_neighbour:
      if (as_json)
        std::cout << json{{"outcome", "halted-direct-neighbour"}}.dump()
                  << "\n";
      else
        std::cout << "direct neighbours: x and y are already adjacent\n";
      return kExitHalted;
    case lpp::SessionOutcome::aborted:
      break;
  }
  std::cerr << "session aborted: " << res.error << "\n";
  return kExitError;
}

int cmd_gen(std::uint32_t nodes, std::uint32_t k, std::uint64_t seed,
            const std::string& out_path) {
  lpp::Graph g = lpp::ba_generate({nodes, k, seed});
  write_output(out_path, lpp::to_edge_list(g));
  return kExitOk;
}

int cmd_oracle(const std::string& graph1_path, const std::string& graph2_path,
               const std::string& x_id, const std::string& y_id, bool as_json) {
  if (x_id == y_id) throw lpp::ConfigError("--x and --y must differ");
  lpp::Graph g1 = load_graph_file(graph1_path);
  lpp::Graph g2 = load_graph_file(graph2_path);
  lpp::CnBreakdown b = lpp::brute_force_cn(g1, g2, x_id, y_id);
  if (as_json) {
    json j = breakdown_json(b);
    j["direct_neighbours"] = lpp::union_graph(g1, g2).has_edge(x_id, y_id);
    std::cout << j.dump() << "\n";
  } else {
    print_breakdown(b);
  }
  return kExitOk;
}

int cmd_leakage(std::uint64_t universe, std::int64_t cardinality,
                const std::string& out_path) {
  std::string csv = "cardinality,possibilities,log10\n";
  char tail[64];
  auto row = [&](std::uint64_t k) {
    lpp::LeakageQuery q{universe, k};
    std::snprintf(tail, sizeof tail, ",%.6f\n", lpp::log10_possibilities(q));
    csv += std::to_string(k) + "," + lpp::possibilities(q).get_str() + tail;
  };
  if (cardinality >= 0) {
    row(static_cast<std::uint64_t>(cardinality));
  } else {
    for (std::uint64_t k = 0; k <= universe; ++k) row(k);
  }
  write_output(out_path, csv);
  return kExitOk;
}

int cmd_bench(const std::vector<std::string>& size_specs,
              const std::string& params_name, std::uint32_t reps,
              const std::string& out_path) {
  const lpp::GroupParams& params =
      lpp::params_for(lpp::params_name_from_string(params_name));
  std::vector<lpp::BenchRecord> records;
  for (const auto& spec : size_specs) {
    std::vector<std::uint32_t> v;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ','))
      v.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    lpp::BenchSizes sizes;
    if (v.size() == 1) {
      sizes = {v[0], v[0], v[0], v[0]};
    } else if (v.size() == 4) {
      sizes = {v[0], v[1], v[2], v[3]};
    } else {
      throw lpp::ConfigError("--sizes wants N or NX1,NY1,NX2,NY2: " + spec);
    }
    records.push_back(lpp::run_bench(params, sizes, reps));
  }
  write_output(out_path, lpp::bench_csv(records));
  return kExitOk;
}

int cmd_experiment_utility(std::uint32_t nodes, std::uint32_t k,
                           std::uint32_t seeds, std::uint64_t seed_base,
                           const std::string& out_path) {
  std::string csv = "seed,avg_graph1,avg_graph2,avg_union\n";
  char line[128];
  for (std::uint32_t s = 0; s < seeds; ++s) {
    lpp::Graph g1 = lpp::ba_generate({nodes, k, seed_base + 2 * s});
    lpp::Graph g2 = lpp::ba_generate({nodes, k, seed_base + 2 * s + 1});
    double a1 = lpp::avg_common_neighbours(g1);
    double a2 = lpp::avg_common_neighbours(g2);
    double au = lpp::avg_common_neighbours(lpp::union_graph(g1, g2));
    std::snprintf(line, sizeof line, "%llu,%.4f,%.4f,%.4f\n",
                  static_cast<unsigned long long>(seed_base + 2 * s), a1, a2,
                  au);
    csv += line;
  }
  write_output(out_path, csv);
  return kExitOk;
}

int cmd_ksweep(std::uint32_t nodes, std::uint32_t k1,
               const std::string& kvalues_csv, std::uint32_t seeds,
               std::uint64_t seed_base, const std::string& out_path) {
  std::vector<std::uint32_t> ks;
  std::stringstream ss(kvalues_csv);
  std::string part;
  while (std::getline(ss, part, ','))
    ks.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  if (ks.empty()) throw lpp::ConfigError("--kvalues is empty");

  std::vector<double> sum_union(ks.size(), 0.0), sum_g2(ks.size(), 0.0);
  for (std::uint32_t s = 0; s < seeds; ++s) {
    auto rows = lpp::k_sweep_experiment(nodes, k1, ks, seed_base + s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      sum_union[i] += rows[i].avg_union;
      sum_g2[i] += rows[i].avg_graph2;
    }
  }
  std::string csv = "k,avg_union,avg_graph2\n";
  char line[96];
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::snprintf(line, sizeof line, "%u,%.4f,%.4f\n", ks[i],
                  sum_union[i] / seeds, sum_g2[i] / seeds);
    csv += line;
  }
  write_output(out_path, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy-preserving common-neighbour counting"};
  app.require_subcommand(1);

  std::string graph_path, graph2_path, listen, connect, x_id, y_id;
  std::string params_name = default_params_name();
  std::string mode_str = "psi";
  std::string out_path;
  bool as_json = false;
  bool once = false;
  std::uint32_t nodes = 0, k = 0, k1 = 22, seeds = 5, reps = 20;
  std::uint64_t seed = 1, seed_base = 1;
  std::uint64_t universe = 0;
  std::int64_t cardinality = -1;
  std::vector<std::string> size_specs;
  std::string kvalues = "2,6,10,14,18,22";

  auto* serve = app.add_subcommand("serve", "run a responder");
  serve->add_option("--graph", graph_path, "edge-list file")->required();
  serve->add_option("--listen", listen, "HOST:PORT")->required();
  serve->add_option("--params", params_name, "toy|secure");
  std::string serve_mode;
  serve->add_option("--mode", serve_mode, "serve only this mode (psi|he)");
  serve->add_flag("--once", once, "serve a single session, then exit");

  auto* query = app.add_subcommand("query", "run a querier");
  query->add_option("--graph", graph_path, "edge-list file")->required();
  query->add_option("--connect", connect, "HOST:PORT")->required();
  query->add_option("--x", x_id, "first node id")->required();
  query->add_option("--y", y_id, "second node id")->required();
  query->add_option("--mode", mode_str, "psi|he");
  query->add_option("--params", params_name, "toy|secure");
  query->add_flag("--json", as_json, "machine-readable output");

  auto* gen = app.add_subcommand("gen", "generate a Barabasi-Albert graph");
  gen->add_option("--nodes", nodes, "node count")->required();
  gen->add_option("--k", k, "edges per step")->required();
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "plaintext union-graph answer");
  oracle->add_option("--graph1", graph_path, "querier edge list")->required();
  oracle->add_option("--graph2", graph2_path, "responder edge list")->required();
  oracle->add_option("--x", x_id, "first node id")->required();
  oracle->add_option("--y", y_id, "second node id")->required();
  oracle->add_flag("--json", as_json, "machine-readable output");

  auto* leak = app.add_subcommand("leakage", "cardinality leakage table");
  leak->add_option("--universe", universe, "candidate node count")->required();
  leak->add_option("--cardinality", cardinality,
                   "single cardinality (default: whole curve)");
  leak->add_option("--out", out_path, "output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "protocol timing");
  bench->add_option("--sizes", size_specs, "N or NX1,NY1,NX2,NY2 (repeatable)")
      ->required();
  bench->add_option("--params", params_name, "toy|secure");
  bench->add_option("--reps", reps, "repetitions per configuration");
  bench->add_option("--out", out_path, "output file (default stdout)");

  auto* util = app.add_subcommand("experiment-utility",
                                  "per-graph vs union common-neighbour averages");
  util->add_option("--nodes", nodes, "node count")->required();
  util->add_option("--k", k, "edges per step")->required();
  util->add_option("--seeds", seeds, "number of seed pairs");
  util->add_option("--seed-base", seed_base, "first seed");
  util->add_option("--out", out_path, "output file (default stdout)");

  auto* ksweep = app.add_subcommand("ksweep", "utility vs responder density");
  ksweep->add_option("--nodes", nodes, "node count")->required();
  ksweep->add_option("--k1", k1, "querier graph edges per step");
  ksweep->add_option("--kvalues", kvalues, "comma list of responder k values");
  ksweep->add_option("--seeds", seeds, "seeds to average over");
  ksweep->add_option("--seed-base", seed_base, "first seed");
  ksweep->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (serve->parsed())
      return cmd_serve(graph_path, listen, params_name, serve_mode, once);
    if (query->parsed())
      return cmd_query(graph_path, connect, x_id, y_id, params_name, mode_str,
                       as_json);
    if (gen->parsed()) return cmd_gen(nodes, k, seed, out_path);
    if (oracle->parsed())
      return cmd_oracle(graph_path, graph2_path, x_id, y_id, as_json);
    if (leak->parsed()) return cmd_leakage(universe, cardinality, out_path);
    if (bench->parsed())
      return cmd_bench(size_specs, params_name, reps, out_path);
    if (util->parsed())
      return cmd_experiment_utility(nodes, k, seeds, seed_base, out_path);
    if (ksweep->parsed())
      return cmd_ksweep(nodes, k1, kvalues, seeds, seed_base, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
