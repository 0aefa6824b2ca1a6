#include "lpp/graph.hpp"

#include <cctype>
#include <sstream>

#include "lpp/errors.hpp"
#include "lpp/random.hpp"

namespace lpp {

namespace {

const std::set<std::string> kEmptySet;

// splitmix64-style stream derivation so one experiment seed yields
// independent generator seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void Graph::add_edge(const std::string& u, const std::string& v) {
  if (u == v) throw InvalidInputError("self-loop: " + u);
  bool fresh = adj_[u].insert(v).second;
  adj_[v].insert(u);
  if (fresh) ++edges_;
}

bool Graph::has_edge(const std::string& u, const std::string& v) const {
  auto it = adj_.find(u);
  return it != adj_.end() && it->second.count(v) != 0;
}

const std::set<std::string>& Graph::neighbours(const std::string& id) const {
  auto it = adj_.find(id);
  return it == adj_.end() ? kEmptySet : it->second;
}

Graph load_edge_list(std::string_view text) {
  Graph g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      if (i > start) tokens.emplace_back(line.substr(start, i - start));
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected 'u v'");
    if (tokens[0] == tokens[1])
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": self-loop");
    g.add_edge(tokens[0], tokens[1]);
  }
  return g;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  for (const auto& [u, nbrs] : g.adjacency())
    for (const auto& v : nbrs)
      if (u < v) out << u << ' ' << v << '\n';
  return out.str();
}

Graph ba_generate(const BaConfig& cfg) {
  if (cfg.k < 1 || cfg.n < cfg.k + 2)
    throw ConfigError("ba_generate: need 1 <= k <= n-2");
  DeterministicRandom rng(cfg.seed);
  std::vector<std::set<std::uint32_t>> adj(cfg.n);
  std::vector<std::uint32_t> endpoints;  // degree-proportional sampling pool
  auto add = [&](std::uint32_t u, std::uint32_t v) {
    adj[u].insert(v);
    adj[v].insert(u);
    endpoints.push_back(u);
    endpoints.push_back(v);
  };
  for (std::uint32_t u = 0; u < cfg.k; ++u)
    for (std::uint32_t v = u + 1; v < cfg.k; ++v) add(u, v);
  for (std::uint32_t v = cfg.k; v < cfg.n; ++v) {
    std::set<std::uint32_t> targets;
    std::size_t guard = 0;
    while (targets.size() < cfg.k) {
      std::uint32_t t =
          endpoints.empty()
              ? static_cast<std::uint32_t>(uniform_below(rng, v))
              : endpoints[uniform_below(rng, endpoints.size())];
      if (t != v) targets.insert(t);
      if (++guard > 100000) {
        // escape hatch; unreachable for sane configs
        for (std::uint32_t w = 0; w < v && targets.size() < cfg.k; ++w)
          targets.insert(w);
      }
    }
    for (auto t : targets) add(v, t);
  }
  Graph g;
  for (std::uint32_t u = 0; u < cfg.n; ++u) {
    auto us = std::to_string(u);
    for (auto v : adj[u])
      if (u < v) g.add_edge(us, std::to_string(v));
  }
  return g;
}

Graph union_graph(const Graph& a, const Graph& b) {
  Graph g = a;
  for (const auto& [u, nbrs] : b.adjacency())
    for (const auto& v : nbrs)
      if (u < v) g.add_edge(u, v);
  return g;
}

double avg_common_neighbours(const Graph& g) {
  std::size_t n = g.node_count();
  if (n < 2) return 0.0;
  // Each node of degree d is the apex of C(d,2) wedges; every wedge is one
  // common-neighbour incidence of one unordered pair.
  double wedges = 0.0;
  for (const auto& [node, nbrs] : g.adjacency()) {
    double d = static_cast<double>(nbrs.size());
    wedges += d * (d - 1.0) / 2.0;
  }
  double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return wedges / pairs;
}

std::vector<KSweepRow> k_sweep_experiment(std::uint32_t n, std::uint32_t k1,
                                          const std::vector<std::uint32_t>& k_values,
                                          std::uint64_t seed) {
  Graph g1 = ba_generate({n, k1, derive_seed(seed, 0)});
  std::vector<KSweepRow> rows;
  rows.reserve(k_values.size());
  for (auto k : k_values) {
    Graph g2 = ba_generate({n, k, derive_seed(seed, k)});
    KSweepRow row;
    row.k = k;
    row.avg_union = avg_common_neighbours(union_graph(g1, g2));
    row.avg_graph2 = avg_common_neighbours(g2);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lpp
