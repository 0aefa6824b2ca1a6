#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpp/group.hpp"

namespace lpp {

// Neighbour-set sizes driving one benchmark configuration: x and y in the
// querier graph, then x and y in the responder graph.
struct BenchSizes {
  std::uint32_t nx1 = 0, ny1 = 0, nx2 = 0, ny2 = 0;
  std::uint32_t total() const { return nx1 + ny1 + nx2 + ny2; }
};

struct PhaseStat {
  std::string phase;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
};

struct BenchRecord {
  BenchSizes sizes;
  std::string params_name;
  std::uint32_t reps = 0;
  std::vector<PhaseStat> phases;  // offline, psi1, psi2, psi3, total
};

// Times the PSI stages directly (offline masking/tagging, then each of the
// three exchanges) and the full protocol over an in-memory loopback
// ("total"). Wall clock, `reps` repetitions, mean and sample stddev.
BenchRecord run_bench(const GroupParams& params, const BenchSizes& sizes,
                      std::uint32_t reps);

// CSV with header nx1,ny1,nx2,ny2,phase,mean_ms,stddev_ms.
std::string bench_csv(const std::vector<BenchRecord>& records);

}  // namespace lpp
