#include "lpp/wire.hpp"

#include "lpp/errors.hpp"

namespace lpp {

namespace {

void put_id(Bytes& out, const std::string& id) {
  if (id.empty() || id.size() > 0xffff)
    throw InvalidInputError("wire: id length out of range");
  put_u16(out, static_cast<std::uint16_t>(id.size()));
  out.insert(out.end(), id.begin(), id.end());
}

std::string read_id(ByteReader& r) {
  std::uint16_t len = r.read_u16();
  if (len == 0) throw ParseError("wire: empty id");
  return to_string(r.read_bytes(len));
}

void put_element(Bytes& out, const GroupParams& params, const GroupElement& e) {
  Bytes enc = params.encode_element(e);
  out.insert(out.end(), enc.begin(), enc.end());
}

GroupElement read_element(ByteReader& r, const GroupParams& params) {
  return params.decode_element(r.read_bytes(params.element_byte_len()));
}

void put_ciphertext(Bytes& out, const GroupParams& params, const Ciphertext& ct) {
  put_element(out, params, ct.c1);
  put_element(out, params, ct.c2);
}

Ciphertext read_ciphertext(ByteReader& r, const GroupParams& params) {
  GroupElement c1 = read_element(r, params);
  GroupElement c2 = read_element(r, params);
  return Ciphertext{std::move(c1), std::move(c2)};
}

void put_count(Bytes& out, std::size_t n) {
  if (n > 0xffffffffu) throw InvalidInputError("wire: count out of range");
  put_u32(out, static_cast<std::uint32_t>(n));
}

// Guards count fields before any allocation: the remaining bytes must hold
// exactly `per` bytes per item (checked in 64-bit to dodge overflow).
std::uint32_t read_count(ByteReader& r, std::size_t per, std::size_t reserve_tail) {
  std::uint32_t n = r.read_u32();
  std::uint64_t need = static_cast<std::uint64_t>(n) * per + reserve_tail;
  if (need > r.remaining() ) throw ParseError("wire: count exceeds frame size");
  return n;
}

const GroupParams& need_params(const GroupParams* params) {
  if (!params) throw ParseError("wire: element message before session init");
  return *params;
}

}  // namespace

const char* msg_type_name(MsgType t) {
  switch (t) {
    case MsgType::SessionInit: return "session-init";
    case MsgType::Halt: return "halt";
    case MsgType::Local2Card: return "local2-card";
    case MsgType::PsiClientMasked: return "psi-client-masked";
    case MsgType::PsiServerResponse: return "psi-server-response";
    case MsgType::Close: return "close";
    case MsgType::Abort: return "abort";
    case MsgType::HeQuerierSets: return "he-querier-sets";
    case MsgType::HePooledMatrix: return "he-pooled-matrix";
    case MsgType::HeIndicatorReturn: return "he-indicator-return";
    case MsgType::HeFinalCn: return "he-final-cn";
  }
  return "unknown";
}

MsgType message_type(const WireMessage& msg) {
  struct Visitor {
    MsgType operator()(const SessionInitMsg&) { return MsgType::SessionInit; }
    MsgType operator()(const HaltMsg&) { return MsgType::Halt; }
    MsgType operator()(const Local2CardMsg&) { return MsgType::Local2Card; }
    MsgType operator()(const PsiClientMaskedMsg&) { return MsgType::PsiClientMasked; }
    MsgType operator()(const PsiServerResponseMsg&) { return MsgType::PsiServerResponse; }
    MsgType operator()(const CloseMsg&) { return MsgType::Close; }
    MsgType operator()(const AbortMsg&) { return MsgType::Abort; }
    MsgType operator()(const HeQuerierSetsMsg&) { return MsgType::HeQuerierSets; }
    MsgType operator()(const HePooledMatrixMsg&) { return MsgType::HePooledMatrix; }
    MsgType operator()(const HeIndicatorReturnMsg&) { return MsgType::HeIndicatorReturn; }
    MsgType operator()(const HeFinalCnMsg&) { return MsgType::HeFinalCn; }
  };
  return std::visit(Visitor{}, msg);
}

Bytes encode_message(const GroupParams& params, const WireMessage& msg) {
  Bytes body;
  struct Visitor {
    Bytes& body;
    const GroupParams& params;

    void operator()(const SessionInitMsg& m) {
      put_u8(body, m.version);
      put_u8(body, m.params_name);
      put_u8(body, m.mode);
      put_id(body, m.x_id);
      put_id(body, m.y_id);
    }
    void operator()(const HaltMsg&) {}
    void operator()(const Local2CardMsg& m) { put_u32(body, m.count); }
    void operator()(const PsiClientMaskedMsg& m) {
      put_u8(body, m.psi_index);
      put_count(body, m.elements.size());
      for (const auto& e : m.elements) put_element(body, params, e);
    }
    void operator()(const PsiServerResponseMsg& m) {
      put_u8(body, m.psi_index);
      put_count(body, m.remasked.size());
      for (const auto& e : m.remasked) put_element(body, params, e);
      put_count(body, m.tags.size());
      for (const auto& t : m.tags) body.insert(body.end(), t.begin(), t.end());
    }
    void operator()(const CloseMsg&) {}
    void operator()(const AbortMsg& m) {
      if (m.reason.size() > 0xffff)
        throw InvalidInputError("wire: abort reason too long");
      put_u16(body, static_cast<std::uint16_t>(m.reason.size()));
      body.insert(body.end(), m.reason.begin(), m.reason.end());
    }
    void operator()(const HeQuerierSetsMsg& m) {
      put_element(body, params, m.pk);
      put_count(body, m.nx.size());
      for (const auto& ct : m.nx) put_ciphertext(body, params, ct);
      put_count(body, m.ny.size());
      for (const auto& ct : m.ny) put_ciphertext(body, params, ct);
      put_count(body, m.local.size());
      for (const auto& ct : m.local) put_ciphertext(body, params, ct);
      put_ciphertext(body, params, m.local1_card);
    }
    void operator()(const HePooledMatrixMsg& m) {
      put_count(body, m.entries.size());
      for (const auto& ct : m.entries) put_ciphertext(body, params, ct);
    }
    void operator()(const HeIndicatorReturnMsg& m) {
      put_count(body, m.indicators.size());
      for (const auto& ct : m.indicators) put_ciphertext(body, params, ct);
    }
    void operator()(const HeFinalCnMsg& m) {
      put_u32(body, m.bound_contrib);
      put_ciphertext(body, params, m.cn);
    }
  };
  std::visit(Visitor{body, params}, msg);

  std::uint64_t len = 1 + body.size();
  if (len > kMaxFrameLen) throw InvalidInputError("wire: frame too large");
  Bytes frame;
  frame.reserve(4 + len);
  put_u32(frame, static_cast<std::uint32_t>(len));
  put_u8(frame, static_cast<std::uint8_t>(message_type(msg)));
  frame.insert(frame.end(), body.begin(), body.end());
  return frame;
}

WireMessage decode_message(BytesView frame, const GroupParams* params) {
  ByteReader r(frame);
  std::uint32_t len = r.read_u32();
  if (len < 1) throw ParseError("wire: frame length below type byte");
  if (len > kMaxFrameLen) throw ParseError("wire: frame too large");
  if (len != r.remaining())
    throw ParseError("wire: frame length does not match payload");
  std::uint8_t type = r.read_u8();

  WireMessage msg;
  switch (static_cast<MsgType>(type)) {
    case MsgType::SessionInit: {
      SessionInitMsg m;
      m.version = r.read_u8();
      if (m.version != 0x01) throw ParseError("wire: unsupported version");
      m.params_name = r.read_u8();
      if (m.params_name > 1) throw ParseError("wire: unknown params name");
      m.mode = r.read_u8();
      if (m.mode > 1) throw ParseError("wire: unknown mode");
      m.x_id = read_id(r);
      m.y_id = read_id(r);
      msg = std::move(m);
      break;
    }
    case MsgType::Halt:
      msg = HaltMsg{};
      break;
    case MsgType::Local2Card: {
      Local2CardMsg m;
      m.count = r.read_u32();
      msg = m;
      break;
    }
    case MsgType::PsiClientMasked: {
      const GroupParams& p = need_params(params);
      PsiClientMaskedMsg m;
      m.psi_index = r.read_u8();
      if (m.psi_index < 1 || m.psi_index > 3)
        throw ParseError("wire: psi index out of range");
      std::uint32_t n = read_count(r, p.element_byte_len(), 0);
      m.elements.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) m.elements.push_back(read_element(r, p));
      msg = std::move(m);
      break;
    }
    case MsgType::PsiServerResponse: {
      const GroupParams& p = need_params(params);
      PsiServerResponseMsg m;
      m.psi_index = r.read_u8();
      if (m.psi_index < 1 || m.psi_index > 3)
        throw ParseError("wire: psi index out of range");
      std::uint32_t n = read_count(r, p.element_byte_len(), 4);
      m.remasked.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) m.remasked.push_back(read_element(r, p));
      std::uint32_t nt = read_count(r, GroupParams::tag_byte_len, 0);
      m.tags.reserve(nt);
      for (std::uint32_t i = 0; i < nt; ++i) {
        Tag t{};
        auto b = r.read_bytes(t.size());
        std::copy(b.begin(), b.end(), t.begin());
        m.tags.push_back(t);
      }
      msg = std::move(m);
      break;
    }
    case MsgType::Close:
      msg = CloseMsg{};
      break;
    case MsgType::Abort: {
      AbortMsg m;
      std::uint16_t rl = r.read_u16();
      m.reason = to_string(r.read_bytes(rl));
      msg = std::move(m);
      break;
    }
    case MsgType::HeQuerierSets: {
      const GroupParams& p = need_params(params);
      HeQuerierSetsMsg m;
      m.pk = read_element(r, p);
      std::size_t ct_len = 2 * p.element_byte_len();
      std::uint32_t nx = read_count(r, ct_len, 4 + 4 + ct_len);
      m.nx.reserve(nx);
      for (std::uint32_t i = 0; i < nx; ++i) m.nx.push_back(read_ciphertext(r, p));
      std::uint32_t ny = read_count(r, ct_len, 4 + ct_len);
      m.ny.reserve(ny);
      for (std::uint32_t i = 0; i < ny; ++i) m.ny.push_back(read_ciphertext(r, p));
      std::uint32_t nl = read_count(r, ct_len, ct_len);
      m.local.reserve(nl);
      for (std::uint32_t i = 0; i < nl; ++i)
        m.local.push_back(read_ciphertext(r, p));
      m.local1_card = read_ciphertext(r, p);
      msg = std::move(m);
      break;
    }
    case MsgType::HePooledMatrix: {
      const GroupParams& p = need_params(params);
      HePooledMatrixMsg m;
      std::uint32_t n = read_count(r, 2 * p.element_byte_len(), 0);
      m.entries.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i)
        m.entries.push_back(read_ciphertext(r, p));
      msg = std::move(m);
      break;
    }
    case MsgType::HeIndicatorReturn: {
      const GroupParams& p = need_params(params);
      HeIndicatorReturnMsg m;
      std::uint32_t n = read_count(r, 2 * p.element_byte_len(), 0);
      m.indicators.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i)
        m.indicators.push_back(read_ciphertext(r, p));
      msg = std::move(m);
      break;
    }
    case MsgType::HeFinalCn: {
      const GroupParams& p = need_params(params);
      HeFinalCnMsg m;
      m.bound_contrib = r.read_u32();
      m.cn = read_ciphertext(r, p);
      msg = std::move(m);
      break;
    }
    default:
      throw ParseError("wire: unknown message type");
  }
  if (!r.done()) throw ParseError("wire: trailing bytes after message");
  return msg;
}

}  // namespace lpp
