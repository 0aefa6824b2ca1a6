#include "lpp/psi.hpp"

#include <set>
#include <unordered_set>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

// Drop repeated identifiers, keeping first-occurrence order. PSI-CA is a set
// protocol; a duplicate would inflate the count.
std::vector<std::string> dedup(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  out.reserve(items.size());
  for (const auto& it : items)
    if (seen.insert(it).second) out.push_back(it);
  return out;
}

}  // namespace

PsiClientState psi_client_offline(const GroupParams& params,
                                  const std::vector<std::string>& items,
                                  RandomSource& rng) {
  PsiClientState st;
  st.params = &params;
  st.r_c = params.rand_scalar(rng);
  st.items = dedup(items);
  st.masked.reserve(st.items.size());
  for (const auto& it : st.items)
    st.masked.push_back(params.exp(params.hash_to_group(it), st.r_c));
  return st;
}

PsiServerState psi_server_offline(const GroupParams& params,
                                  const std::vector<std::string>& items,
                                  RandomSource& rng) {
  PsiServerState st;
  st.params = &params;
  st.r_s = params.rand_scalar(rng);
  st.items = dedup(items);
  std::vector<Tag> tags;
  tags.reserve(st.items.size());
  for (const auto& it : st.items)
    tags.push_back(params.tag_hash(params.exp(params.hash_to_group(it), st.r_s)));
  auto perm = rand_permutation(rng, static_cast<std::uint32_t>(tags.size()));
  st.server_tags.reserve(tags.size());
  for (auto idx : perm) st.server_tags.push_back(tags[idx]);
  return st;
}

PsiServerReply psi_server_respond(const PsiServerState& state,
                                  const std::vector<GroupElement>& client_masked,
                                  RandomSource& rng) {
  const GroupParams& params = *state.params;
  for (const auto& e : client_masked)
    if (!params.is_in_group(e))
      throw ProtocolError("psi: client element outside the subgroup");
  std::vector<GroupElement> remasked;
  remasked.reserve(client_masked.size());
  for (const auto& e : client_masked) remasked.push_back(params.exp(e, state.r_s));
  // Fresh permutation per session: the client must not be able to tie a
  // matched tag back to one of its own indices.
  auto perm = rand_permutation(rng, static_cast<std::uint32_t>(remasked.size()));
  PsiServerReply reply;
  reply.remasked.reserve(remasked.size());
  for (auto idx : perm) reply.remasked.push_back(remasked[idx]);
  reply.tags = state.server_tags;
  return reply;
}

PsiResult psi_client_finalize(const PsiClientState& state,
                              const std::vector<GroupElement>& remasked_shuffled,
                              const std::vector<Tag>& server_tags) {
  if (remasked_shuffled.size() != state.masked.size())
    throw ProtocolError("psi: reply length does not match the request");
  const GroupParams& params = *state.params;
  Scalar rc_inv = params.scalar_inv(state.r_c);
  std::set<Tag> server_set(server_tags.begin(), server_tags.end());
  std::set<Tag> matched;
  for (const auto& e : remasked_shuffled) {
    Tag t = params.tag_hash(params.exp(e, rc_inv));
    if (server_set.count(t)) matched.insert(t);
  }
  return PsiResult{static_cast<std::uint32_t>(matched.size())};
}

}  // namespace lpp
