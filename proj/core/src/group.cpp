#include "lpp/group.hpp"

#include <atomic>
#include <cstring>

#include <openssl/evp.h>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

// Output of tools/gen_group_params.py.
const char* kToyP =
    "99f3a95c979d3ac67edd5624c77c96bb294b4162f13430598ac8e6167cc50fc3"
    "0739387cd7a355f399dca18e77e5c69973f076f68c82c0a3c7097d4682ca75f0"
    "1d9e151abb892b9cdd52eb3a4580ca85aed16ee91e2f256a62be831d6c513bfe"
    "cc763789cece2b2fee63454897061ea9fc2d62b79f9df912accb6d104b979e29";
const char* kToyQ = "a3468b7a7c32280a33776c622a220d624ea5d655";
const char* kToyG =
    "8e925a1b28a772fe9d13e2d24f1abce26a983663aa0bb47503f9dddcae1664f1"
    "d30e77d0267ca7591e397a64acb1a1b3fc052929387a2b54df302cae611fafdd"
    "069053437ba961cefdfde7165da7c2842c82cee6e4e698f37f8cd4c6f36c6f85"
    "adf9ffd98a32b329f11a0428382f5bfa3f41399feb1b4080f9a2c63bc7b43ca7";

const char* kSecureP =
    "8d128e943c353f7e7fa40188ae1ef6c249c5b949d5fc9bcd0ec06124e844b060"
    "ada2449bb56b83d368a0882f86f31069e06dfb718206f96a6687b3fecda76c43"
    "f617266294e91f652314a580c9c759bc899122d650b7aa0fea7769d738c7a810"
    "8c0bdc5d147f06e9e2495d87a75f0977f098adc8e5d284cc9318da6ce61c89c2"
    "c52fc0ccf9cae01ab4464b4e0a6aeb81417580b94d9df166bff58394afc4454f"
    "a50ef814243904d874ceb702e6a82220a6e37e7d776450b393cd1cb8476debc1"
    "58b4d8cef21da62cf38f70a7023f28e41bcf31b393d110bd7d5cb104177b0281"
    "c6fb8d79661920c4aab00745f7f29605ee75ed10b797d2c00602421851b3af23";
const char* kSecureQ = "913227da2f3f5e07e2df6b34e71eea7a82d86d6e23b99a18c69716ef";
const char* kSecureG =
    "251a80e6c592722b3e5a12fd205bbcb211f72ed9d5b34530dace7f4d43259c4f"
    "62a986307d9aa397a6f205a6687cf67b5a5879a3dfef39563ccd69865c142426"
    "56f809ad017e24946bdecc5b2214a407cf4bfb827740f7ae58c2511557e16b10"
    "cd67343b578c492d28c41debcd9e273cc8963821b83d3190c8b0876c48220b2f"
    "492044eeb52097de0ee107546f4dcb102fc3d43e3c5ab87d73a88ec0e07b73d9"
    "b1564bb6965a45786b8a9c59bf010e2d9493f738b0d9ba0e2187400f3fcf9fe0"
    "d9753d6502fed833b071fc36c66c656f24faa14a47bfcd926bcaee8e8abdf0f2"
    "a8ce3d8d1cee0b7bb2620e9fff9c5d98cfd16f8b595561c0fe63e287c39d6999";

constexpr char kHashToGroupLabel[] = "LPP-H1";
constexpr char kTagHashLabel[] = "LPP-H2";

std::atomic<std::uint64_t> g_exp_count{0};

mpz_class powm(const mpz_class& base, const mpz_class& e, const mpz_class& mod) {
  g_exp_count.fetch_add(1, std::memory_order_relaxed);
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

// length-1-byte + label, prefixed to every hash payload
Bytes labelled(std::string_view label, BytesView payload) {
  Bytes out;
  out.reserve(1 + label.size() + payload.size());
  out.push_back(static_cast<std::uint8_t>(label.size()));
  out.insert(out.end(), label.begin(), label.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

// Concatenated SHA-256 blocks over data || BE32(i), wide enough to make the
// mod-p reduction bias negligible (64 extra bits).
mpz_class expand_to_int(BytesView data, std::size_t width_bytes) {
  std::size_t nblocks = (width_bytes + 8 + 31) / 32;
  Bytes wide;
  wide.reserve(nblocks * 32);
  Bytes block_input(data.begin(), data.end());
  block_input.resize(data.size() + 4);
  for (std::size_t i = 0; i < nblocks; ++i) {
    block_input[data.size() + 0] = static_cast<std::uint8_t>(i >> 24);
    block_input[data.size() + 1] = static_cast<std::uint8_t>(i >> 16);
    block_input[data.size() + 2] = static_cast<std::uint8_t>(i >> 8);
    block_input[data.size() + 3] = static_cast<std::uint8_t>(i);
    auto digest = sha256(block_input);
    wide.insert(wide.end(), digest.begin(), digest.end());
  }
  return be_to_mpz(wide);
}

}  // namespace

std::array<std::uint8_t, 32> sha256(BytesView data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size()) {
    throw Error("SHA-256 failure");
  }
  return out;
}

Bytes mpz_to_be(const mpz_class& v, std::size_t width) {
  Bytes out(width, 0);
  std::size_t count = 0;
  if (v != 0) {
    std::size_t need = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (need > width) throw Error("integer wider than encoding width");
    mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, v.get_mpz_t());
  }
  return out;
}

mpz_class be_to_mpz(BytesView b) {
  mpz_class v;
  if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return v;
}

GroupParams::GroupParams(std::string name, const char* p_hex, const char* q_hex,
                         const char* g_hex)
    : name_(std::move(name)), p_(p_hex, 16), q_(q_hex, 16), g_(g_hex, 16) {
  cofactor_ = (p_ - 1) / q_;
  element_byte_len_ = (mpz_sizeinbase(p_.get_mpz_t(), 2) + 7) / 8;
  scalar_byte_len_ = (mpz_sizeinbase(q_.get_mpz_t(), 2) + 7) / 8;
}

const GroupParams& GroupParams::toy() {
  static const GroupParams params("toy", kToyP, kToyQ, kToyG);
  return params;
}

const GroupParams& GroupParams::secure() {
  static const GroupParams params("secure", kSecureP, kSecureQ, kSecureG);
  return params;
}

const GroupParams& GroupParams::by_name(std::string_view name) {
  if (name == "toy") return toy();
  if (name == "secure") return secure();
  throw ConfigError("unknown parameter set: " + std::string(name));
}

void GroupParams::validate() const {
  if (mpz_probab_prime_p(p_.get_mpz_t(), 40) == 0)
    throw ConfigError("p is composite");
  if (mpz_probab_prime_p(q_.get_mpz_t(), 40) == 0)
    throw ConfigError("q is composite");
  if ((p_ - 1) % q_ != 0) throw ConfigError("q does not divide p-1");
  if (g_ <= 1 || g_ >= p_) throw ConfigError("generator out of range");
  if (powm(g_, q_, p_) != 1) throw ConfigError("generator order is not q");
}

GroupElement GroupParams::hash_to_group(BytesView id) const {
  if (id.empty()) throw InvalidInputError("hash_to_group: empty id");
  Bytes payload(id.begin(), id.end());
  for (unsigned attempt = 0;; ++attempt) {
    if (attempt > 0) {
      if (attempt > 256) throw Error("hash_to_group: retry limit");
      if (attempt == 1)
        payload.push_back(0);
      else
        payload.back() = static_cast<std::uint8_t>(attempt - 1);
    }
    mpz_class wide = expand_to_int(labelled(kHashToGroupLabel, payload),
                                   element_byte_len_);
    mpz_class reduced = wide % p_;
    mpz_class e = powm(reduced, cofactor_, p_);
    if (e != 0 && e != 1) return GroupElement{std::move(e)};
  }
}

GroupElement GroupParams::hash_to_group(std::string_view id) const {
  return hash_to_group(BytesView(reinterpret_cast<const std::uint8_t*>(id.data()),
                                 id.size()));
}

Tag GroupParams::tag_hash(const GroupElement& e) const {
  return sha256(labelled(kTagHashLabel, encode_element(e)));
}

GroupElement GroupParams::exp(const GroupElement& e, const Scalar& s) const {
  return GroupElement{powm(e.value, s.value, p_)};
}

GroupElement GroupParams::mul(const GroupElement& a, const GroupElement& b) const {
  return GroupElement{a.value * b.value % p_};
}

GroupElement GroupParams::inv(const GroupElement& e) const {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), e.value.get_mpz_t(), p_.get_mpz_t()) == 0)
    throw InvalidInputError("element not invertible");
  return GroupElement{std::move(r)};
}

GroupElement GroupParams::identity() const {
  return GroupElement{mpz_class(1)};
}

bool GroupParams::is_in_group(const GroupElement& e) const {
  if (e.value <= 0 || e.value >= p_) return false;
  return powm(e.value, q_, p_) == 1;
}

Scalar GroupParams::scalar_from_u64(std::uint64_t v) const {
  mpz_class m;
  mpz_import(m.get_mpz_t(), 1, 1, sizeof v, 0 /* host endian */, 0, &v);
  return scalar_from_mpz(m);
}

Scalar GroupParams::scalar_from_mpz(const mpz_class& v) const {
  mpz_class r = v % q_;
  if (r < 0) r += q_;
  return Scalar{std::move(r)};
}

Scalar GroupParams::scalar_add(const Scalar& a, const Scalar& b) const {
  return Scalar{(a.value + b.value) % q_};
}

Scalar GroupParams::scalar_sub(const Scalar& a, const Scalar& b) const {
  mpz_class r = (a.value - b.value) % q_;
  if (r < 0) r += q_;
  return Scalar{std::move(r)};
}

Scalar GroupParams::scalar_inv(const Scalar& s) const {
  if (s.value == 0) throw InvalidInputError("scalar 0 has no inverse");
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), s.value.get_mpz_t(), q_.get_mpz_t()) == 0)
    throw InvalidInputError("scalar has no inverse");
  return Scalar{std::move(r)};
}

Scalar GroupParams::rand_scalar(RandomSource& rng) const {
  Bytes buf(scalar_byte_len_);
  for (;;) {
    rng.fill(buf);
    mpz_class v = be_to_mpz(buf);
    if (v >= 1 && v < q_) return Scalar{std::move(v)};
  }
}

Bytes GroupParams::encode_element(const GroupElement& e) const {
  return mpz_to_be(e.value, element_byte_len_);
}

GroupElement GroupParams::decode_element(BytesView b) const {
  if (b.size() != element_byte_len_)
    throw ParseError("element encoding has wrong width");
  GroupElement e{be_to_mpz(b)};
  if (e.value == 0) throw ParseError("element encoding is zero");
  if (e.value >= p_) throw ParseError("element encoding exceeds modulus");
  if (!is_in_group(e)) throw ParseError("element outside the order-q subgroup");
  return e;
}

Bytes GroupParams::encode_scalar(const Scalar& s) const {
  return mpz_to_be(s.value, scalar_byte_len_);
}

Scalar GroupParams::decode_scalar(BytesView b) const {
  if (b.size() != scalar_byte_len_)
    throw ParseError("scalar encoding has wrong width");
  mpz_class v = be_to_mpz(b);
  if (v >= q_) throw ParseError("scalar encoding exceeds group order");
  return Scalar{std::move(v)};
}

std::uint64_t group_exp_count() {
  return g_exp_count.load(std::memory_order_relaxed);
}

}  // namespace lpp
