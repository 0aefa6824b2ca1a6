#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lpp/group.hpp"
#include "lpp/random.hpp"

namespace lpp {

// Exponential ElGamal over the same group as the PSI: E(m) = (g^r, pk^r *
// g^m). Additive homomorphism in the exponent; decryption of small values by
// bounded search.

struct HeKeyPair {
  const GroupParams* params = nullptr;
  Scalar sk;
  GroupElement pk;  // g^sk
};

struct Ciphertext {
  GroupElement c1, c2;
  bool operator==(const Ciphertext&) const = default;
};

HeKeyPair he_keygen(const GroupParams& params, RandomSource& rng);

Ciphertext he_encrypt(const GroupParams& params, const GroupElement& pk,
                      const Scalar& m, RandomSource& rng);
Ciphertext he_encrypt_u32(const GroupParams& params, const GroupElement& pk,
                          std::uint32_t m, RandomSource& rng);

bool he_decrypt_is_zero(const GroupParams& params, const Scalar& sk,
                        const Ciphertext& ct);

// Recovers m by stepping g^0, g^1, ... g^bound. Throws OutOfRangeError when
// the plaintext is outside [0, bound].
std::uint32_t he_decrypt_small(const GroupParams& params, const Scalar& sk,
                               const Ciphertext& ct, std::uint32_t bound);

Ciphertext he_add(const GroupParams& params, const Ciphertext& a,
                  const Ciphertext& b);
Ciphertext he_neg(const GroupParams& params, const Ciphertext& ct);
Ciphertext he_sub(const GroupParams& params, const Ciphertext& a,
                  const Ciphertext& b);
Ciphertext he_scalar_mul(const GroupParams& params, const Ciphertext& ct,
                         const Scalar& s);
Ciphertext he_rerandomize(const GroupParams& params, const GroupElement& pk,
                          const Ciphertext& ct, RandomSource& rng);

// Identifier -> plaintext mapping: the first 16 bytes of
// tag_hash(hash_to_group(id)) as a big-endian integer mod q.
Scalar he_encode_id(const GroupParams& params, const std::string& id);

// r * (ct_a - E(enc_id(id_b))): plaintext 0 iff the identifiers match,
// uniformly random nonzero otherwise. r must be in [1, q-1].
Ciphertext he_blinded_difference(const GroupParams& params,
                                 const GroupElement& pk, const Ciphertext& ct_a,
                                 const std::string& id_b, const Scalar& r,
                                 RandomSource& rng);

// One equality matrix: every querier ciphertext against every responder-side
// identifier.
struct HeMatrixSpec {
  std::vector<Ciphertext> queried;
  std::vector<std::string> own;
};

struct HePoolSlot {
  std::uint8_t matrix = 0;  // index into the matrices vector
  std::uint32_t row = 0;    // queried index
  std::uint32_t col = 0;    // own index
  bool dummy = false;
};

// The pooled, dummy-padded, shuffled comparison entries. `entries` is what
// goes on the wire; `slots` is the responder-private unshuffle key.
struct HePool {
  std::vector<Ciphertext> entries;
  std::vector<HePoolSlot> slots;
  std::uint32_t dummy_count = 0;
  std::uint32_t dummy_zero_count = 0;
};

// Builds all matrices' blinded differences, pads with as many dummies as
// there are real cells (zero-dummy share uniform), and shuffles the pool.
HePool he_build_pool(const GroupParams& params, const GroupElement& pk,
                     const std::vector<HeMatrixSpec>& matrices,
                     RandomSource& rng);

// Consumes the querier's indicator ciphertexts (E(1) for zero plaintext,
// E(0) otherwise, in pool order), discards dummies, and sums per matrix.
// Result ciphertexts carry fresh randomness even for empty matrices.
std::array<Ciphertext, 3> he_aggregate(const GroupParams& params,
                                       const GroupElement& pk,
                                       const HePool& pool,
                                       const std::vector<Ciphertext>& indicators,
                                       RandomSource& rng);

}  // namespace lpp
