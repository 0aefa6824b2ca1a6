#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lpp/bytes.hpp"
#include "lpp/group.hpp"
#include "lpp/he.hpp"

namespace lpp {

// Framing: len (4-byte big-endian, covers type + body) || type (1 byte) ||
// body. All multi-byte integers big-endian. Element and ciphertext fields are
// fixed-width per the session's group parameters.

enum class MsgType : std::uint8_t {
  SessionInit = 0x01,
  Halt = 0x02,
  Local2Card = 0x03,
  PsiClientMasked = 0x04,
  PsiServerResponse = 0x05,
  Close = 0x06,
  Abort = 0x07,
  HeQuerierSets = 0x10,
  HePooledMatrix = 0x11,
  HeIndicatorReturn = 0x12,
  HeFinalCn = 0x13,
};

const char* msg_type_name(MsgType t);

// body: version (1B, = 0x01), params_name (1B, 0=toy 1=secure),
// mode (1B, 0=psi 1=he), x_id_len (2B) || x_id, y_id_len (2B) || y_id
struct SessionInitMsg {
  std::uint8_t version = 0x01;
  std::uint8_t params_name = 0;
  std::uint8_t mode = 0;
  std::string x_id, y_id;
};

struct HaltMsg {};

// body: count (4B)
struct Local2CardMsg {
  std::uint32_t count = 0;
};

// body: psi_index (1B, 1..3), count (4B), count x element
struct PsiClientMaskedMsg {
  std::uint8_t psi_index = 0;
  std::vector<GroupElement> elements;
};

// body: psi_index (1B), count_remasked (4B), elements, count_tags (4B),
// count_tags x 32-byte tags
struct PsiServerResponseMsg {
  std::uint8_t psi_index = 0;
  std::vector<GroupElement> remasked;
  std::vector<Tag> tags;
};

struct CloseMsg {};

// body: reason_len (2B), reason (utf-8)
struct AbortMsg {
  std::string reason;
};

// body: pk (element), count_nx (4B) || nx ciphertexts, count_ny (4B) || ny
// ciphertexts, count_local (4B) || local ciphertexts, local1_card ciphertext.
// A ciphertext is c1 || c2, element width each.
struct HeQuerierSetsMsg {
  GroupElement pk;
  std::vector<Ciphertext> nx, ny, local;
  Ciphertext local1_card;
};

// body: count (4B), count x ciphertext
struct HePooledMatrixMsg {
  std::vector<Ciphertext> entries;
};

// body: count (4B), count x ciphertext (pool order)
struct HeIndicatorReturnMsg {
  std::vector<Ciphertext> indicators;
};

// body: bound_contrib (4B, responder's public local2 bound), cn ciphertext
struct HeFinalCnMsg {
  std::uint32_t bound_contrib = 0;
  Ciphertext cn;
};

using WireMessage =
    std::variant<SessionInitMsg, HaltMsg, Local2CardMsg, PsiClientMaskedMsg,
                 PsiServerResponseMsg, CloseMsg, AbortMsg, HeQuerierSetsMsg,
                 HePooledMatrixMsg, HeIndicatorReturnMsg, HeFinalCnMsg>;

MsgType message_type(const WireMessage& msg);

// Serializes to a complete frame (length prefix included).
Bytes encode_message(const GroupParams& params, const WireMessage& msg);

// Parses a complete frame. `params` may be null only while the parameter set
// is still unknown (i.e. before SessionInit); element-bearing messages then
// fail to parse. Every decoded element is subgroup-validated. Throws
// ParseError on truncation, trailing bytes, unknown types, or invalid
// elements.
WireMessage decode_message(BytesView frame, const GroupParams* params);

// Frames larger than this are rejected outright.
inline constexpr std::uint32_t kMaxFrameLen = 64u << 20;

}  // namespace lpp
