#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpp/group.hpp"
#include "lpp/random.hpp"

namespace lpp {

// Two-role private set intersection cardinality over the DDH group:
// the client masks its hashed identifiers, the server re-masks and shuffles
// them and hands over tags of its own masked set, and the client unmasks and
// counts tag matches. Only the cardinality is revealed, and only to the
// client.

struct PsiClientState {
  const GroupParams* params = nullptr;
  Scalar r_c;                       // client masking exponent
  std::vector<std::string> items;   // deduplicated, input order
  std::vector<GroupElement> masked; // a_i = H(c_i)^{r_c}, same order
};

struct PsiServerState {
  const GroupParams* params = nullptr;
  Scalar r_s;                      // server masking exponent
  std::vector<std::string> items;  // deduplicated
  std::vector<Tag> server_tags;    // H'(H(s_j)^{r_s}), shuffled
};

struct PsiServerReply {
  std::vector<GroupElement> remasked; // shuffle([a_i^{r_s}])
  std::vector<Tag> tags;              // the server's offline tag list
};

struct PsiResult {
  std::uint32_t cardinality = 0;
};

// Offline stage, client side: dedup, hash each identifier to the group and
// mask with a fresh exponent.
PsiClientState psi_client_offline(const GroupParams& params,
                                  const std::vector<std::string>& items,
                                  RandomSource& rng);

// Offline stage, server side: mask the hashed set, tag, shuffle. The shuffle
// permutation is discarded.
PsiServerState psi_server_offline(const GroupParams& params,
                                  const std::vector<std::string>& items,
                                  RandomSource& rng);

// Online stage, server side: re-mask the client's elements and shuffle them
// under a fresh permutation. Throws ProtocolError on an element outside the
// subgroup.
PsiServerReply psi_server_respond(const PsiServerState& state,
                                  const std::vector<GroupElement>& client_masked,
                                  RandomSource& rng);

// Final stage, client side: strip r_c off each re-masked element, tag, and
// count matches against the server's tag set. Throws ProtocolError if the
// reply length disagrees with what the client sent.
PsiResult psi_client_finalize(const PsiClientState& state,
                              const std::vector<GroupElement>& remasked_shuffled,
                              const std::vector<Tag>& server_tags);

}  // namespace lpp
