#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "lpp/errors.hpp"
#include "lpp/psi.hpp"
#include "lpp/random.hpp"

using namespace lpp;

namespace {

std::uint32_t run_psi(const GroupParams& g, RandomSource& rng,
                      const std::vector<std::string>& client,
                      const std::vector<std::string>& server) {
  auto cs = psi_client_offline(g, client, rng);
  auto ss = psi_server_offline(g, server, rng);
  auto reply = psi_server_respond(ss, cs.masked, rng);
  return psi_client_finalize(cs, reply.remasked, reply.tags).cardinality;
}

std::uint32_t oracle_card(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::uint32_t n = 0;
  for (const auto& x : sa) n += sb.count(x);
  return n;
}

}  // namespace

TEST_CASE("psi: fixed small cases") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(100);
  CHECK(run_psi(g, rng, {"a", "b", "c"}, {"b", "c", "d"}) == 2);
  CHECK(run_psi(g, rng, {"a"}, {"a"}) == 1);
  CHECK(run_psi(g, rng, {"a"}, {"b"}) == 0);
  CHECK(run_psi(g, rng, {}, {"a", "b"}) == 0);
  CHECK(run_psi(g, rng, {"a", "b"}, {}) == 0);
  CHECK(run_psi(g, rng, {}, {}) == 0);
}

TEST_CASE("psi: duplicated inputs count once") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(101);
  CHECK(run_psi(g, rng, {"a", "a", "b"}, {"a", "b", "b", "b"}) == 2);
  auto cs = psi_client_offline(g, {"a", "a", "b", "a"}, rng);
  CHECK(cs.items == std::vector<std::string>{"a", "b"});
  CHECK(cs.masked.size() == 2);
}

TEST_CASE("psi: random sets agree with plaintext intersection") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(102);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> a, b;
    std::uint64_t na = uniform_below(rng, 17), nb = uniform_below(rng, 17);
    for (std::uint64_t i = 0; i < na; ++i)
      a.push_back("u" + std::to_string(uniform_below(rng, 24)));
    for (std::uint64_t i = 0; i < nb; ++i)
      b.push_back("u" + std::to_string(uniform_below(rng, 24)));
    CHECK(run_psi(g, rng, a, b) == oracle_card(a, b));
  }
}

TEST_CASE("psi: masks and shuffles are fresh per session") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(103);
  std::vector<std::string> items{"a", "b", "c", "d"};
  auto c1 = psi_client_offline(g, items, rng);
  auto c2 = psi_client_offline(g, items, rng);
  CHECK(!(c1.masked[0] == c2.masked[0]));  // fresh r_c

  auto ss = psi_server_offline(g, items, rng);
  auto r1 = psi_server_respond(ss, c1.masked, rng);
  auto r2 = psi_server_respond(ss, c1.masked, rng);
  // same offline state, but two responses use independent permutations; with
  // 4! orderings a collision of the whole vector is unlikely, so re-roll once
  if (r1.remasked == r2.remasked) r2 = psi_server_respond(ss, c1.masked, rng);
  CHECK(r1.remasked != r2.remasked);
  // ... over the same multiset of elements
  auto k1 = r1.remasked, k2 = r2.remasked;
  auto by_value = [](const GroupElement& x, const GroupElement& y) {
    return x.value < y.value;
  };
  std::sort(k1.begin(), k1.end(), by_value);
  std::sort(k2.begin(), k2.end(), by_value);
  CHECK(k1 == k2);
}

TEST_CASE("psi: unmasking recovers exactly the server-masked multiset") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(104);
  std::vector<std::string> items{"n1", "n2", "n3"};
  auto cs = psi_client_offline(g, items, rng);
  auto ss = psi_server_offline(g, items, rng);
  auto reply = psi_server_respond(ss, cs.masked, rng);
  Scalar rc_inv = g.scalar_inv(cs.r_c);
  std::multiset<Bytes> unmasked, expected;
  for (const auto& e : reply.remasked)
    unmasked.insert(g.encode_element(g.exp(e, rc_inv)));
  for (const auto& id : items)
    expected.insert(g.encode_element(g.exp(g.hash_to_group(id), ss.r_s)));
  CHECK(unmasked == expected);
}

TEST_CASE("psi: reply length mismatch rejected") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(105);
  auto cs = psi_client_offline(g, {"a", "b"}, rng);
  auto ss = psi_server_offline(g, {"a"}, rng);
  auto reply = psi_server_respond(ss, cs.masked, rng);
  auto truncated = reply.remasked;
  truncated.pop_back();
  CHECK_THROWS_AS(psi_client_finalize(cs, truncated, reply.tags),
                  ProtocolError);
}

TEST_CASE("psi: server rejects elements outside the subgroup") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(106);
  auto ss = psi_server_offline(g, {"a"}, rng);
  mpz_class h = 2;
  while (g.is_in_group(GroupElement{h})) ++h;
  CHECK_THROWS_AS(psi_server_respond(ss, {GroupElement{h}}, rng),
                  ProtocolError);
}

TEST_CASE("psi: secure parameter set") {
  const auto& g = GroupParams::secure();
  DeterministicRandom rng(108);
  CHECK(run_psi(g, rng, {"a", "b", "c"}, {"b", "c", "d"}) == 2);
  CHECK(g.encode_element(g.hash_to_group("a")).size() == 256);
}

TEST_CASE("psi: online cost scales linearly with set size") {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(107);
  auto measure = [&](std::size_t n) {
    std::vector<std::string> items;
    for (std::size_t i = 0; i < n; ++i) items.push_back("m" + std::to_string(i));
    auto cs = psi_client_offline(g, items, rng);
    auto ss = psi_server_offline(g, items, rng);
    std::uint64_t before = group_exp_count();
    auto reply = psi_server_respond(ss, cs.masked, rng);
    psi_client_finalize(cs, reply.remasked, reply.tags);
    return group_exp_count() - before;
  };
  double small = static_cast<double>(measure(32));
  double large = static_cast<double>(measure(64));
  double ratio = large / small;
  CHECK(ratio > 1.8);
  CHECK(ratio < 2.2);
}
