#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "lpp/bytes.hpp"
#include "lpp/random.hpp"

namespace lpp {

// Element of the order-q subgroup of Z_p^*, value in [1, p-1].
struct GroupElement {
  mpz_class value;
  bool operator==(const GroupElement&) const = default;
};

// Exponent in [0, q-1].
struct Scalar {
  mpz_class value;
  bool operator==(const Scalar&) const = default;
};

// 32-byte output of the tag hash H'.
using Tag = std::array<std::uint8_t, 32>;

// Schnorr-group parameters: primes p, q with q | p-1 and g generating the
// order-q subgroup of Z_p^*. Two embedded sets are shipped: `toy`
// (|p|=1024, |q|=160, for experiments) and `secure` (|p|=2048, |q|=224).
// See tools/gen_group_params.py for the generation procedure.
class GroupParams {
 public:
  static const GroupParams& toy();
  static const GroupParams& secure();
  static const GroupParams& by_name(std::string_view name);

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const mpz_class& g() const { return g_; }
  const std::string& name() const { return name_; }
  std::size_t element_byte_len() const { return element_byte_len_; }
  std::size_t scalar_byte_len() const { return scalar_byte_len_; }
  static constexpr std::size_t tag_byte_len = 32;

  // Checks q | p-1, g != 1, g^q = 1, and probabilistic primality of p and q.
  // Throws ConfigError on violation.
  void validate() const;

  // H: byte string -> group element. MGF-style SHA-256 expansion of the
  // domain-separated id, reduced mod p, then raised to the cofactor
  // (p-1)/q. An identity (or zero) result re-hashes with an appended
  // counter byte. Throws InvalidInputError on an empty id.
  GroupElement hash_to_group(BytesView id) const;
  GroupElement hash_to_group(std::string_view id) const;

  // H': 32-byte tag over the fixed-width encoding of e.
  Tag tag_hash(const GroupElement& e) const;

  GroupElement exp(const GroupElement& e, const Scalar& s) const;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& e) const;
  GroupElement identity() const;
  GroupElement generator() const { return GroupElement{g_}; }
  bool is_identity(const GroupElement& e) const { return e.value == 1; }

  // Membership in the order-q subgroup (value in [1, p-1] and value^q = 1).
  bool is_in_group(const GroupElement& e) const;

  Scalar scalar_from_u64(std::uint64_t v) const;
  Scalar scalar_from_mpz(const mpz_class& v) const;  // reduces mod q
  Scalar scalar_add(const Scalar& a, const Scalar& b) const;
  Scalar scalar_sub(const Scalar& a, const Scalar& b) const;
  Scalar scalar_inv(const Scalar& s) const;  // throws InvalidInputError on 0
  Scalar rand_scalar(RandomSource& rng) const;  // uniform in [1, q-1]

  // Fixed-width big-endian encodings. decode_element rejects wrong widths,
  // zero, values >= p, and non-members of the subgroup.
  Bytes encode_element(const GroupElement& e) const;
  GroupElement decode_element(BytesView b) const;
  Bytes encode_scalar(const Scalar& s) const;
  Scalar decode_scalar(BytesView b) const;

 private:
  GroupParams(std::string name, const char* p_hex, const char* q_hex,
              const char* g_hex);

  std::string name_;
  mpz_class p_, q_, g_;
  mpz_class cofactor_;  // (p-1)/q
  std::size_t element_byte_len_ = 0;
  std::size_t scalar_byte_len_ = 0;
};

// Process-wide count of group exponentiations, for complexity assertions.
std::uint64_t group_exp_count();

// Raw SHA-256, exposed for the deterministic stream and tag derivations.
std::array<std::uint8_t, 32> sha256(BytesView data);

// Fixed-width big-endian integer conversions.
Bytes mpz_to_be(const mpz_class& v, std::size_t width);
mpz_class be_to_mpz(BytesView b);

}  // namespace lpp
