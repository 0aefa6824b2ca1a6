#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpp/graph.hpp"
#include "lpp/group.hpp"
#include "lpp/random.hpp"
#include "lpp/transport.hpp"
#include "lpp/wire.hpp"

namespace lpp {

enum class Mode : std::uint8_t { psi = 0, he = 1 };
enum class ParamsName : std::uint8_t { toy = 0, secure = 1 };

const GroupParams& params_for(ParamsName name);
const char* to_string(Mode m);
const char* to_string(ParamsName name);
Mode mode_from_string(std::string_view s);              // "psi" | "he"
ParamsName params_name_from_string(std::string_view s); // "toy" | "secure"

struct QuerySpec {
  std::string x_id, y_id;
  Mode mode = Mode::psi;
  ParamsName params_name = ParamsName::toy;
};

struct CnBreakdown {
  std::uint32_t local1 = 0, local2 = 0;
  std::uint32_t crossover1 = 0, crossover2 = 0;
  std::uint32_t overlap = 0;
  std::uint32_t cn = 0;
  bool operator==(const CnBreakdown&) const = default;
};

enum class SessionOutcome {
  completed,
  halted_direct_neighbour,  // responder holds the x-y edge (or querier does)
  aborted,
};

enum class Direction : std::uint8_t { sent, received };

struct TranscriptEntry {
  Direction dir = Direction::sent;
  MsgType type = MsgType::Abort;
  Bytes frame;  // complete frame, length prefix included
  std::chrono::steady_clock::time_point at;
};

struct SessionTranscript {
  std::vector<TranscriptEntry> entries;
  SessionOutcome outcome = SessionOutcome::aborted;
};

// Local preprocessing around the query pair: local common neighbours, and
// the per-endpoint sets with x, y, and the local set removed. The removal is
// what makes the five-component formula exact.
struct PreparedInputs {
  std::vector<std::string> nx, ny, local;
};

PreparedInputs prepare_inputs(const Graph& g, const std::string& x_id,
                              const std::string& y_id);

struct QuerierResult {
  SessionOutcome outcome = SessionOutcome::aborted;
  std::optional<CnBreakdown> breakdown;  // psi mode, completed
  std::optional<std::uint32_t> cn;       // both modes, completed
  SessionTranscript transcript;
  std::string error;  // abort reason
};

// Runs the querier role (Graph 1) over a connected transport. Dispatches on
// spec.mode. If the querier's own graph already holds the x-y edge, the
// session is skipped entirely with a halted outcome and an empty transcript.
QuerierResult run_querier(const QuerySpec& spec, const Graph& graph1,
                          Transport& transport, RandomSource& rng);

struct ResponderResult {
  SessionTranscript transcript;
  std::string error;
};

// Serves one session (Graph 2). The mode comes from the peer's SessionInit;
// `require_mode` rejects sessions of the other mode when set.
ResponderResult run_responder(const Graph& graph2, Transport& transport,
                              RandomSource& rng,
                              std::optional<Mode> require_mode = std::nullopt);

// Plaintext oracle over the union graph; test/tool use only.
CnBreakdown brute_force_cn(const Graph& g1, const Graph& g2,
                           const std::string& x_id, const std::string& y_id);

}  // namespace lpp
