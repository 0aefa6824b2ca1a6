#include "lpp/leakage.hpp"

#include <cmath>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

constexpr std::uint64_t kExactLimit = 10000;

void check(const LeakageQuery& q) {
  if (q.cardinality > q.universe)
    throw OutOfRangeError("leakage: cardinality exceeds universe");
}

double log10_mpz(const mpz_class& v) {
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log10(mant) + static_cast<double>(exp2) * std::log10(2.0);
}

}  // namespace

mpz_class possibilities(const LeakageQuery& q) {
  check(q);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), q.universe, q.cardinality);
  return r;
}

double log10_possibilities(const LeakageQuery& q) {
  check(q);
  if (q.universe <= kExactLimit) return log10_mpz(possibilities(q));
  double n = static_cast<double>(q.universe);
  double k = static_cast<double>(q.cardinality);
  return (std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) /
         std::log(10.0);
}

std::vector<std::pair<std::uint64_t, mpz_class>> leakage_curve(
    std::uint64_t universe) {
  std::vector<std::pair<std::uint64_t, mpz_class>> curve;
  curve.reserve(universe + 1);
  mpz_class c = 1;  // C(n,0)
  for (std::uint64_t k = 0;; ++k) {
    curve.emplace_back(k, c);
    if (k == universe) break;
    // Pascal-free exact step: C(n,k+1) = C(n,k) * (n-k) / (k+1)
    c *= universe - k;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
  }
  return curve;
}

}  // namespace lpp
