#include "lpp/protocol.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "lpp/errors.hpp"
#include "lpp/he.hpp"
#include "lpp/psi.hpp"

namespace lpp {

namespace {

// The peer sent Abort: carry its reason but do not echo an Abort back.
struct PeerAbort : ProtocolError {
  using ProtocolError::ProtocolError;
};

class MessageChannel {
 public:
  MessageChannel(Transport& t, SessionTranscript& tr) : t_(t), tr_(tr) {}

  void send(const GroupParams& params, const WireMessage& msg) {
    Bytes frame = encode_message(params, msg);
    record(Direction::sent, message_type(msg), frame);
    t_.send_all(frame);
  }

  WireMessage recv(const GroupParams* params) {
    Bytes frame = read_frame();
    record(Direction::received, static_cast<MsgType>(frame[4]), frame);
    WireMessage msg = decode_message(frame, params);
    if (auto* ab = std::get_if<AbortMsg>(&msg))
      throw PeerAbort("peer aborted: " + ab->reason);
    return msg;
  }

  // After Halt: swallow whatever the peer already had in flight, so closing
  // the connection cannot clobber the Halt on its way out.
  void drain() {
    try {
      for (;;) {
        Bytes frame = read_frame();
        if (frame[4] == static_cast<std::uint8_t>(MsgType::Close)) return;
      }
    } catch (const std::exception&) {
    }
  }

 private:
  Bytes read_frame() {
    std::array<std::uint8_t, 4> hdr{};
    t_.recv_exact(hdr);
    std::uint32_t len = (static_cast<std::uint32_t>(hdr[0]) << 24) |
                        (static_cast<std::uint32_t>(hdr[1]) << 16) |
                        (static_cast<std::uint32_t>(hdr[2]) << 8) |
                        static_cast<std::uint32_t>(hdr[3]);
    if (len < 1 || len > kMaxFrameLen)
      throw ProtocolError("frame length out of range");
    Bytes frame(4 + len);
    std::copy(hdr.begin(), hdr.end(), frame.begin());
    t_.recv_exact(std::span<std::uint8_t>(frame).subspan(4));
    return frame;
  }

  void record(Direction d, MsgType t, const Bytes& frame) {
    tr_.entries.push_back({d, t, frame, std::chrono::steady_clock::now()});
  }

  Transport& t_;
  SessionTranscript& tr_;
};

void try_abort(MessageChannel& ch, const GroupParams& params,
               const std::string& reason) {
  try {
    ch.send(params, AbortMsg{reason});
  } catch (const std::exception&) {
  }
}

std::uint32_t checked_u32(std::size_t n) {
  if (n > 0xffffffffu) throw InvalidInputError("set size exceeds wire limit");
  return static_cast<std::uint32_t>(n);
}

// Takes the message by value so the returned payload owns its storage; a
// reference into the recv() temporary would dangle.
template <typename T>
T expect(WireMessage msg, const char* what) {
  if (T* m = std::get_if<T>(&msg)) return std::move(*m);
  throw ProtocolError(std::string("expected ") + what + ", got " +
                      msg_type_name(message_type(msg)));
}

QuerierResult run_psi_querier(const QuerySpec& spec, const Graph& graph1,
                              Transport& transport, RandomSource& rng) {
  QuerierResult res;
  const GroupParams& params = params_for(spec.params_name);
  MessageChannel ch(transport, res.transcript);
  try {
    PreparedInputs prep = prepare_inputs(graph1, spec.x_id, spec.y_id);
    ch.send(params,
            SessionInitMsg{0x01, static_cast<std::uint8_t>(spec.params_name),
                           static_cast<std::uint8_t>(spec.mode), spec.x_id,
                           spec.y_id});
    WireMessage reply = ch.recv(&params);
    if (std::holds_alternative<HaltMsg>(reply)) {
      res.outcome = SessionOutcome::halted_direct_neighbour;
      res.transcript.outcome = res.outcome;
      transport.shutdown();
      return res;
    }
    std::uint32_t local2 =
        expect<Local2CardMsg>(std::move(reply), "local2 cardinality").count;

    // PSI #1: nx1 vs the responder's ny2; #2: ny1 vs nx2; #3: local1 vs local2.
    const std::array<const std::vector<std::string>*, 3> sets = {
        &prep.nx, &prep.ny, &prep.local};
    std::array<std::uint32_t, 3> counts{};
    for (std::uint32_t k = 0; k < 3; ++k) {
      PsiClientState st = psi_client_offline(params, *sets[k], rng);
      PsiClientMaskedMsg m;
      m.psi_index = static_cast<std::uint8_t>(k + 1);
      m.elements = st.masked;
      ch.send(params, m);
      const auto& resp =
          expect<PsiServerResponseMsg>(ch.recv(&params), "psi response");
      if (resp.psi_index != k + 1)
        throw ProtocolError("psi response index out of sequence");
      counts[k] = psi_client_finalize(st, resp.remasked, resp.tags).cardinality;
    }

    CnBreakdown b;
    b.local1 = checked_u32(prep.local.size());
    b.local2 = local2;
    b.crossover1 = counts[0];
    b.crossover2 = counts[1];
    b.overlap = counts[2];
    if (b.overlap > std::min(b.local1, b.local2))
      throw ProtocolError("overlap exceeds the local sets");
    b.cn = b.local1 + b.local2 + b.crossover1 + b.crossover2 - b.overlap;

    ch.send(params, CloseMsg{});
    res.outcome = SessionOutcome::completed;
    res.breakdown = b;
    res.cn = b.cn;
  } catch (const PeerAbort& e) {
    res.outcome = SessionOutcome::aborted;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.outcome = SessionOutcome::aborted;
    res.error = e.what();
    try_abort(ch, params, e.what());
  }
  res.transcript.outcome = res.outcome;
  transport.shutdown();
  return res;
}

QuerierResult run_he_querier(const QuerySpec& spec, const Graph& graph1,
                             Transport& transport, RandomSource& rng) {
  QuerierResult res;
  const GroupParams& params = params_for(spec.params_name);
  MessageChannel ch(transport, res.transcript);
  try {
    PreparedInputs prep = prepare_inputs(graph1, spec.x_id, spec.y_id);
    HeKeyPair kp = he_keygen(params, rng);
    ch.send(params,
            SessionInitMsg{0x01, static_cast<std::uint8_t>(spec.params_name),
                           static_cast<std::uint8_t>(spec.mode), spec.x_id,
                           spec.y_id});
    HeQuerierSetsMsg sets;
    sets.pk = kp.pk;
    auto encrypt_ids = [&](const std::vector<std::string>& ids) {
      std::vector<Ciphertext> out;
      out.reserve(ids.size());
      for (const auto& id : ids)
        out.push_back(he_encrypt(params, kp.pk, he_encode_id(params, id), rng));
      return out;
    };
    sets.nx = encrypt_ids(prep.nx);
    sets.ny = encrypt_ids(prep.ny);
    sets.local = encrypt_ids(prep.local);
    sets.local1_card =
        he_encrypt_u32(params, kp.pk, checked_u32(prep.local.size()), rng);
    ch.send(params, sets);

    WireMessage reply = ch.recv(&params);
    if (std::holds_alternative<HaltMsg>(reply)) {
      res.outcome = SessionOutcome::halted_direct_neighbour;
      res.transcript.outcome = res.outcome;
      transport.shutdown();
      return res;
    }
    const auto pool = expect<HePooledMatrixMsg>(std::move(reply), "pooled matrix");

    HeIndicatorReturnMsg ind;
    ind.indicators.reserve(pool.entries.size());
    for (const auto& ct : pool.entries) {
      bool zero = he_decrypt_is_zero(params, kp.sk, ct);
      ind.indicators.push_back(he_encrypt_u32(params, kp.pk, zero ? 1 : 0, rng));
    }
    ch.send(params, ind);

    const auto& fin = expect<HeFinalCnMsg>(ch.recv(&params), "final cn");
    std::uint64_t bound64 = graph1.neighbours(spec.x_id).size() +
                            graph1.neighbours(spec.y_id).size() +
                            fin.bound_contrib;
    std::uint32_t bound = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(bound64, 0xffffffffu));
    std::uint32_t cn = he_decrypt_small(params, kp.sk, fin.cn, bound);

    ch.send(params, CloseMsg{});
    res.outcome = SessionOutcome::completed;
    res.cn = cn;
  } catch (const PeerAbort& e) {
    res.outcome = SessionOutcome::aborted;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.outcome = SessionOutcome::aborted;
    res.error = e.what();
    try_abort(ch, params, e.what());
  }
  res.transcript.outcome = res.outcome;
  transport.shutdown();
  return res;
}

void serve_psi(MessageChannel& ch, const GroupParams& params,
               const PreparedInputs& prep, RandomSource& rng) {
  ch.send(params, Local2CardMsg{checked_u32(prep.local.size())});
  // Server sets, in protocol order: ny2 for crossover1, nx2 for crossover2,
  // local2 for overlap.
  const std::array<const std::vector<std::string>*, 3> sets = {
      &prep.ny, &prep.nx, &prep.local};
  for (std::uint32_t k = 0; k < 3; ++k) {
    const auto& m =
        expect<PsiClientMaskedMsg>(ch.recv(&params), "psi client set");
    if (m.psi_index != k + 1)
      throw ProtocolError("psi client set index out of sequence");
    PsiServerState st = psi_server_offline(params, *sets[k], rng);
    PsiServerReply reply = psi_server_respond(st, m.elements, rng);
    PsiServerResponseMsg out;
    out.psi_index = static_cast<std::uint8_t>(k + 1);
    out.remasked = std::move(reply.remasked);
    out.tags = std::move(reply.tags);
    ch.send(params, out);
  }
  expect<CloseMsg>(ch.recv(&params), "close");
}

void serve_he(MessageChannel& ch, const GroupParams& params,
              const PreparedInputs& prep, RandomSource& rng) {
  const auto& sets =
      expect<HeQuerierSetsMsg>(ch.recv(&params), "he querier sets");
  std::vector<HeMatrixSpec> mats(3);
  mats[0] = {sets.nx, prep.ny};       // crossover1
  mats[1] = {sets.ny, prep.nx};       // crossover2
  mats[2] = {sets.local, prep.local}; // overlap
  HePool pool = he_build_pool(params, sets.pk, mats, rng);
  ch.send(params, HePooledMatrixMsg{pool.entries});

  const auto& ind =
      expect<HeIndicatorReturnMsg>(ch.recv(&params), "indicator return");
  auto sums = he_aggregate(params, sets.pk, pool, ind.indicators, rng);

  Ciphertext cn = he_add(params, sets.local1_card,
                         he_encrypt_u32(params, sets.pk,
                                        checked_u32(prep.local.size()), rng));
  cn = he_add(params, cn, sums[0]);
  cn = he_add(params, cn, sums[1]);
  cn = he_sub(params, cn, sums[2]);
  cn = he_rerandomize(params, sets.pk, cn, rng);
  // Power-of-two bucket, never the exact |local2|.
  std::uint32_t bound_contrib =
      std::bit_ceil(std::max<std::uint32_t>(1, checked_u32(prep.local.size())));
  ch.send(params, HeFinalCnMsg{bound_contrib, cn});

  expect<CloseMsg>(ch.recv(&params), "close");
}

}  // namespace

const GroupParams& params_for(ParamsName name) {
  return name == ParamsName::secure ? GroupParams::secure() : GroupParams::toy();
}

const char* to_string(Mode m) { return m == Mode::he ? "he" : "psi"; }

const char* to_string(ParamsName name) {
  return name == ParamsName::secure ? "secure" : "toy";
}

Mode mode_from_string(std::string_view s) {
  if (s == "psi") return Mode::psi;
  if (s == "he") return Mode::he;
  throw ConfigError("unknown mode: " + std::string(s));
}

ParamsName params_name_from_string(std::string_view s) {
  if (s == "toy") return ParamsName::toy;
  if (s == "secure") return ParamsName::secure;
  throw ConfigError("unknown parameter set: " + std::string(s));
}

PreparedInputs prepare_inputs(const Graph& g, const std::string& x_id,
                              const std::string& y_id) {
  if (x_id == y_id) throw InvalidInputError("x and y must differ");
  const auto& gx = g.neighbours(x_id);
  const auto& gy = g.neighbours(y_id);
  PreparedInputs out;
  for (const auto& v : gx)
    if (v != x_id && v != y_id && gy.count(v)) out.local.push_back(v);
  std::set<std::string> local(out.local.begin(), out.local.end());
  for (const auto& v : gx)
    if (v != x_id && v != y_id && !local.count(v)) out.nx.push_back(v);
  for (const auto& v : gy)
    if (v != x_id && v != y_id && !local.count(v)) out.ny.push_back(v);
  return out;
}

QuerierResult run_querier(const QuerySpec& spec, const Graph& graph1,
                          Transport& transport, RandomSource& rng) {
  // Assumption: a querier holding the x-y edge has no need for the protocol.
  if (graph1.has_edge(spec.x_id, spec.y_id)) {
    QuerierResult res;
    res.outcome = SessionOutcome::halted_direct_neighbour;
    res.transcript.outcome = res.outcome;
    return res;
  }
  return spec.mode == Mode::he ? run_he_querier(spec, graph1, transport, rng)
                               : run_psi_querier(spec, graph1, transport, rng);
}

ResponderResult run_responder(const Graph& graph2, Transport& transport,
                              RandomSource& rng,
                              std::optional<Mode> require_mode) {
  ResponderResult res;
  MessageChannel ch(transport, res.transcript);
  const GroupParams* params = nullptr;
  try {
    const auto& init =
        expect<SessionInitMsg>(ch.recv(nullptr), "session init");
    params = &params_for(static_cast<ParamsName>(init.params_name));
    Mode mode = static_cast<Mode>(init.mode);
    if (require_mode && mode != *require_mode)
      throw ProtocolError(std::string("mode ") + to_string(mode) +
                          " not served here");
    if (init.x_id == init.y_id) throw ProtocolError("x and y must differ");

    if (graph2.has_edge(init.x_id, init.y_id)) {
      ch.send(*params, HaltMsg{});
      ch.drain();
      res.transcript.outcome = SessionOutcome::halted_direct_neighbour;
      transport.shutdown();
      return res;
    }

    PreparedInputs prep = prepare_inputs(graph2, init.x_id, init.y_id);
    if (mode == Mode::he)
      serve_he(ch, *params, prep, rng);
    else
      serve_psi(ch, *params, prep, rng);
    res.transcript.outcome = SessionOutcome::completed;
  } catch (const PeerAbort& e) {
    res.transcript.outcome = SessionOutcome::aborted;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.transcript.outcome = SessionOutcome::aborted;
    res.error = e.what();
    try_abort(ch, params ? *params : GroupParams::toy(), e.what());
  }
  transport.shutdown();
  return res;
}

CnBreakdown brute_force_cn(const Graph& g1, const Graph& g2,
                           const std::string& x_id, const std::string& y_id) {
  auto count_common = [](const std::vector<std::string>& a,
                         const std::vector<std::string>& b) {
    std::set<std::string> bs(b.begin(), b.end());
    std::uint32_t n = 0;
    for (const auto& v : a) n += bs.count(v) ? 1 : 0;
    return n;
  };
  PreparedInputs p1 = prepare_inputs(g1, x_id, y_id);
  PreparedInputs p2 = prepare_inputs(g2, x_id, y_id);
  CnBreakdown b;
  b.local1 = checked_u32(p1.local.size());
  b.local2 = checked_u32(p2.local.size());
  b.crossover1 = count_common(p1.nx, p2.ny);
  b.crossover2 = count_common(p1.ny, p2.nx);
  b.overlap = count_common(p1.local, p2.local);
  // cn independently, straight off the union graph
  Graph u = union_graph(g1, g2);
  const auto& uy = u.neighbours(y_id);
  std::uint32_t cn = 0;
  for (const auto& v : u.neighbours(x_id))
    if (v != x_id && v != y_id && uy.count(v)) ++cn;
  b.cn = cn;
  return b;
}

}  // namespace lpp
