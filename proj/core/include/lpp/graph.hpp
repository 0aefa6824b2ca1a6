#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lpp {

// Undirected graph over byte-string node identifiers. No self-loops; the
// adjacency map stays symmetric under every mutation.
class Graph {
 public:
  void add_edge(const std::string& u, const std::string& v);
  bool has_node(const std::string& id) const { return adj_.count(id) != 0; }
  bool has_edge(const std::string& u, const std::string& v) const;
  // Unknown ids resolve to an empty set, not an error: the parties share
  // identifiers, not node existence.
  const std::set<std::string>& neighbours(const std::string& id) const;
  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  const std::map<std::string, std::set<std::string>>& adjacency() const {
    return adj_;
  }

 private:
  std::map<std::string, std::set<std::string>> adj_;
  std::size_t edges_ = 0;
};

struct BaConfig {
  std::uint32_t n = 0;    // node count
  std::uint32_t k = 0;    // edges added per step, 1 <= k <= n-2
  std::uint64_t seed = 0; // generator seed
};

// Lines of "u v"; '#' starts a comment, blank lines are skipped. Duplicate
// edges collapse. Malformed or self-loop lines raise ParseError with the
// line number.
Graph load_edge_list(std::string_view text);

// Inverse of load_edge_list, one edge per line.
std::string to_edge_list(const Graph& g);

// Barabasi-Albert preferential attachment: a k-node seed clique, then each
// new node attaches to k distinct existing nodes with probability
// proportional to current degree. Deterministic for a fixed seed.
Graph ba_generate(const BaConfig& cfg);

Graph union_graph(const Graph& a, const Graph& b);

// Mean of |common neighbours(u,v)| over all C(n,2) unordered node pairs,
// adjacent pairs included. Wedge counting makes this O(nodes), not
// O(pairs * degree).
double avg_common_neighbours(const Graph& g);

struct KSweepRow {
  std::uint32_t k = 0;
  double avg_union = 0.0;
  double avg_graph2 = 0.0;
};

// Utility experiment: Graph 1 fixed at k1 edges per step, Graph 2 swept over
// k_values; reports the union and Graph-2 averages for each k.
std::vector<KSweepRow> k_sweep_experiment(std::uint32_t n, std::uint32_t k1,
                                          const std::vector<std::uint32_t>& k_values,
                                          std::uint64_t seed);

}  // namespace lpp
