#include "lpp/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "lpp/errors.hpp"
#include "lpp/graph.hpp"
#include "lpp/protocol.hpp"
#include "lpp/psi.hpp"
#include "lpp/random.hpp"
#include "lpp/transport.hpp"

namespace lpp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

PhaseStat stat_of(std::string phase, const std::vector<double>& samples) {
  PhaseStat s;
  s.phase = std::move(phase);
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean_ms = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double acc = 0.0;
    for (double v : samples) acc += (v - s.mean_ms) * (v - s.mean_ms);
    s.stddev_ms = std::sqrt(acc / static_cast<double>(samples.size() - 1));
  }
  return s;
}

std::vector<std::string> make_ids(const char* prefix, std::uint32_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

BenchRecord run_bench(const GroupParams& params, const BenchSizes& sizes,
                      std::uint32_t reps) {
  if (reps < 1) throw ConfigError("bench: reps must be >= 1");
  SystemRandom rng;

  // Synthetic neighbour sets. A quarter of the responder's sets reuses the
  // querier's identifiers so the tag matching paths see real hits; the
  // timing is size-driven either way.
  auto nx1 = make_ids("u", sizes.nx1);
  auto ny1 = make_ids("v", sizes.ny1);
  auto ny2 = make_ids("u", sizes.ny2 / 4);  // overlaps nx1
  for (auto& id : make_ids("z", sizes.ny2 - sizes.ny2 / 4))
    ny2.push_back("q" + id);
  auto nx2 = make_ids("v", sizes.nx2 / 4);  // overlaps ny1
  for (auto& id : make_ids("z", sizes.nx2 - sizes.nx2 / 4))
    nx2.push_back("r" + id);
  std::vector<std::string> local;  // empty: all pairs go through psi1/psi2

  // Graphs for the full-protocol run, mirroring the same sets.
  Graph g1, g2;
  for (const auto& v : nx1) g1.add_edge("x", v);
  for (const auto& v : ny1) g1.add_edge("y", v);
  for (const auto& v : nx2) g2.add_edge("x", v);
  for (const auto& v : ny2) g2.add_edge("y", v);

  std::vector<double> t_offline, t_psi[3], t_total;
  for (std::uint32_t rep = 0; rep < reps; ++rep) {
    auto t0 = Clock::now();
    PsiClientState c1 = psi_client_offline(params, nx1, rng);
    PsiClientState c2 = psi_client_offline(params, ny1, rng);
    PsiClientState c3 = psi_client_offline(params, local, rng);
    PsiServerState s1 = psi_server_offline(params, ny2, rng);
    PsiServerState s2 = psi_server_offline(params, nx2, rng);
    PsiServerState s3 = psi_server_offline(params, local, rng);
    t_offline.push_back(ms_since(t0));

    const PsiClientState* cs[3] = {&c1, &c2, &c3};
    const PsiServerState* ss[3] = {&s1, &s2, &s3};
    for (int k = 0; k < 3; ++k) {
      t0 = Clock::now();
      PsiServerReply reply = psi_server_respond(*ss[k], cs[k]->masked, rng);
      psi_client_finalize(*cs[k], reply.remasked, reply.tags);
      t_psi[k].push_back(ms_since(t0));
    }

    auto [qt, rt] = make_loopback_pair();
    t0 = Clock::now();
    std::thread responder([&] {
      SystemRandom rng2;
      run_responder(g2, *rt, rng2);
    });
    QuerySpec spec{"x", "y", Mode::psi, params.name() == "secure"
                                            ? ParamsName::secure
                                            : ParamsName::toy};
    QuerierResult qr = run_querier(spec, g1, *qt, rng);
    responder.join();
    t_total.push_back(ms_since(t0));
    if (qr.outcome != SessionOutcome::completed)
      throw Error("bench: protocol run failed: " + qr.error);
  }

  BenchRecord rec;
  rec.sizes = sizes;
  rec.params_name = params.name();
  rec.reps = reps;
  rec.phases.push_back(stat_of("offline", t_offline));
  rec.phases.push_back(stat_of("psi1", t_psi[0]));
  rec.phases.push_back(stat_of("psi2", t_psi[1]));
  rec.phases.push_back(stat_of("psi3", t_psi[2]));
  rec.phases.push_back(stat_of("total", t_total));
  return rec;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = "nx1,ny1,nx2,ny2,phase,mean_ms,stddev_ms\n";
  char line[160];
  for (const auto& rec : records) {
    for (const auto& ph : rec.phases) {
      std::snprintf(line, sizeof line, "%u,%u,%u,%u,%s,%.3f,%.3f\n",
                    rec.sizes.nx1, rec.sizes.ny1, rec.sizes.nx2, rec.sizes.ny2,
                    ph.phase.c_str(), ph.mean_ms, ph.stddev_ms);
      out += line;
    }
  }
  return out;
}

}  // namespace lpp
