// Microbenchmarks for the group primitives, the PSI stages, the HE
// operations, and a full loopback session. Run with --benchmark_filter=...
// to narrow down; toy parameters unless the name says secure.

#include <benchmark/benchmark.h>

#include <string>
#include <thread>
#include <vector>

#include "lpp/graph.hpp"
#include "lpp/he.hpp"
#include "lpp/protocol.hpp"
#include "lpp/psi.hpp"
#include "lpp/random.hpp"
#include "lpp/transport.hpp"

using namespace lpp;

namespace {

std::vector<std::string> make_ids(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

void BM_GroupExp(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(1);
  GroupElement base = g.hash_to_group("bench");
  Scalar s = g.rand_scalar(rng);
  for (auto _ : state) benchmark::DoNotOptimize(g.exp(base, s));
}
BENCHMARK(BM_GroupExp);

void BM_GroupExpSecure(benchmark::State& state) {
  const auto& g = GroupParams::secure();
  DeterministicRandom rng(1);
  GroupElement base = g.hash_to_group("bench");
  Scalar s = g.rand_scalar(rng);
  for (auto _ : state) benchmark::DoNotOptimize(g.exp(base, s));
}
BENCHMARK(BM_GroupExpSecure);

void BM_HashToGroup(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  std::uint64_t i = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(g.hash_to_group("node" + std::to_string(i++)));
}
BENCHMARK(BM_HashToGroup);

void BM_TagHash(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  GroupElement e = g.hash_to_group("tagged");
  for (auto _ : state) benchmark::DoNotOptimize(g.tag_hash(e));
}
BENCHMARK(BM_TagHash);

void BM_PsiRoundTrip(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(2);
  auto ids = make_ids("n", static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto cs = psi_client_offline(g, ids, rng);
    auto ss = psi_server_offline(g, ids, rng);
    auto reply = psi_server_respond(ss, cs.masked, rng);
    benchmark::DoNotOptimize(
        psi_client_finalize(cs, reply.remasked, reply.tags));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PsiRoundTrip)->Arg(16)->Arg(64)->Arg(256);

void BM_PsiOnlineOnly(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(3);
  auto ids = make_ids("n", static_cast<std::size_t>(state.range(0)));
  auto cs = psi_client_offline(g, ids, rng);
  auto ss = psi_server_offline(g, ids, rng);
  for (auto _ : state) {
    auto reply = psi_server_respond(ss, cs.masked, rng);
    benchmark::DoNotOptimize(
        psi_client_finalize(cs, reply.remasked, reply.tags));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PsiOnlineOnly)->Arg(16)->Arg(64)->Arg(256);

void BM_HeEncrypt(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(4);
  auto kp = he_keygen(g, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(he_encrypt_u32(g, kp.pk, 7, rng));
}
BENCHMARK(BM_HeEncrypt);

void BM_HeDecryptIsZero(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(5);
  auto kp = he_keygen(g, rng);
  Ciphertext ct = he_encrypt_u32(g, kp.pk, 1, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(he_decrypt_is_zero(g, kp.sk, ct));
}
BENCHMARK(BM_HeDecryptIsZero);

void BM_HeBlindedDifference(benchmark::State& state) {
  const auto& g = GroupParams::toy();
  DeterministicRandom rng(6);
  auto kp = he_keygen(g, rng);
  Ciphertext ct = he_encrypt(g, kp.pk, he_encode_id(g, "a"), rng);
  for (auto _ : state) {
    Scalar r = g.rand_scalar(rng);
    benchmark::DoNotOptimize(he_blinded_difference(g, kp.pk, ct, "b", r, rng));
  }
}
BENCHMARK(BM_HeBlindedDifference);

void BM_SessionLoopback(benchmark::State& state) {
  Graph g1 = ba_generate({100, static_cast<std::uint32_t>(state.range(0)), 1});
  Graph g2 = ba_generate({100, static_cast<std::uint32_t>(state.range(0)), 2});
  std::string x = "0", y;
  for (std::uint32_t i = 1;; ++i) {
    y = std::to_string(i);
    if (!g1.has_edge(x, y) && !g2.has_edge(x, y)) break;
  }
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto [qt, rt] = make_loopback_pair();
    ResponderResult rres;
    std::thread responder([&] {
      DeterministicRandom rng(seed * 2 + 1);
      rres = run_responder(g2, *rt, rng);
    });
    DeterministicRandom rng(seed * 2);
    auto q = run_querier({.x_id = x, .y_id = y}, g1, *qt, rng);
    responder.join();
    ++seed;
    if (q.outcome != SessionOutcome::completed)
      state.SkipWithError("session did not complete");
  }
}
BENCHMARK(BM_SessionLoopback)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
