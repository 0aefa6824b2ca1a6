#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace lpp {

// How much does a revealed intersection cardinality narrow down the hidden
// set? Exactly C(universe, cardinality) configurations remain consistent, so
// the binomial coefficient is the leakage measure.
struct LeakageQuery {
  std::uint64_t universe = 0;     // candidate nodes (total minus the two endpoints)
  std::uint64_t cardinality = 0;  // leaked intersection size
};

// Exact C(universe, cardinality). Throws OutOfRangeError when
// cardinality > universe.
mpz_class possibilities(const LeakageQuery& q);

// log10 of the same count; exact big-integer route for universes up to
// 10000, log-gamma beyond (where the coefficient itself would be
// astronomically wide).
double log10_possibilities(const LeakageQuery& q);

// (k, C(universe, k)) for k = 0..universe.
std::vector<std::pair<std::uint64_t, mpz_class>> leakage_curve(
    std::uint64_t universe);

}  // namespace lpp
