#include "lpp/he.hpp"

#include "lpp/errors.hpp"

namespace lpp {

HeKeyPair he_keygen(const GroupParams& params, RandomSource& rng) {
  HeKeyPair kp;
  kp.params = &params;
  kp.sk = params.rand_scalar(rng);
  kp.pk = params.exp(params.generator(), kp.sk);
  return kp;
}

Ciphertext he_encrypt(const GroupParams& params, const GroupElement& pk,
                      const Scalar& m, RandomSource& rng) {
  Scalar r = params.rand_scalar(rng);
  return Ciphertext{
      params.exp(params.generator(), r),
      params.mul(params.exp(pk, r), params.exp(params.generator(), m))};
}

Ciphertext he_encrypt_u32(const GroupParams& params, const GroupElement& pk,
                          std::uint32_t m, RandomSource& rng) {
  return he_encrypt(params, pk, params.scalar_from_u64(m), rng);
}

bool he_decrypt_is_zero(const GroupParams& params, const Scalar& sk,
                        const Ciphertext& ct) {
  return params.exp(ct.c1, sk) == ct.c2;
}

std::uint32_t he_decrypt_small(const GroupParams& params, const Scalar& sk,
                               const Ciphertext& ct, std::uint32_t bound) {
  // g^m = c2 / c1^sk, then walk the powers of g
  GroupElement gm = params.mul(ct.c2, params.inv(params.exp(ct.c1, sk)));
  GroupElement acc = params.identity();
  for (std::uint32_t m = 0; m <= bound; ++m) {
    if (acc == gm) return m;
    acc = params.mul(acc, params.generator());
  }
  throw OutOfRangeError("he: plaintext exceeds decryption bound");
}

Ciphertext he_add(const GroupParams& params, const Ciphertext& a,
                  const Ciphertext& b) {
  return Ciphertext{params.mul(a.c1, b.c1), params.mul(a.c2, b.c2)};
}

Ciphertext he_neg(const GroupParams& params, const Ciphertext& ct) {
  return Ciphertext{params.inv(ct.c1), params.inv(ct.c2)};
}

Ciphertext he_sub(const GroupParams& params, const Ciphertext& a,
                  const Ciphertext& b) {
  return he_add(params, a, he_neg(params, b));
}

Ciphertext he_scalar_mul(const GroupParams& params, const Ciphertext& ct,
                         const Scalar& s) {
  return Ciphertext{params.exp(ct.c1, s), params.exp(ct.c2, s)};
}

Ciphertext he_rerandomize(const GroupParams& params, const GroupElement& pk,
                          const Ciphertext& ct, RandomSource& rng) {
  Scalar s = params.rand_scalar(rng);  // never 0, so the bytes always change
  return Ciphertext{params.mul(ct.c1, params.exp(params.generator(), s)),
                    params.mul(ct.c2, params.exp(pk, s))};
}

Scalar he_encode_id(const GroupParams& params, const std::string& id) {
  Tag tag = params.tag_hash(params.hash_to_group(id));
  return params.scalar_from_mpz(be_to_mpz(BytesView(tag.data(), 16)));
}

Ciphertext he_blinded_difference(const GroupParams& params,
                                 const GroupElement& pk, const Ciphertext& ct_a,
                                 const std::string& id_b, const Scalar& r,
                                 RandomSource& rng) {
  if (r.value == 0) throw InvalidInputError("he: blinding factor must be nonzero");
  Ciphertext enc_b = he_encrypt(params, pk, he_encode_id(params, id_b), rng);
  return he_scalar_mul(params, he_sub(params, ct_a, enc_b), r);
}

HePool he_build_pool(const GroupParams& params, const GroupElement& pk,
                     const std::vector<HeMatrixSpec>& matrices,
                     RandomSource& rng) {
  std::vector<Ciphertext> entries;
  std::vector<HePoolSlot> slots;
  for (std::size_t m = 0; m < matrices.size(); ++m) {
    const auto& spec = matrices[m];
    for (std::size_t i = 0; i < spec.queried.size(); ++i) {
      for (std::size_t j = 0; j < spec.own.size(); ++j) {
        Scalar r = params.rand_scalar(rng);
        entries.push_back(he_blinded_difference(params, pk, spec.queried[i],
                                                spec.own[j], r, rng));
        slots.push_back({static_cast<std::uint8_t>(m),
                         static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(j), false});
      }
    }
  }

  HePool pool;
  pool.dummy_count = static_cast<std::uint32_t>(entries.size());
  // Zero-dummy share uniform over [0, dummy_count]: the querier's pooled
  // zero-count is real zeros plus this noise term.
  pool.dummy_zero_count = pool.dummy_count == 0
                              ? 0
                              : static_cast<std::uint32_t>(
                                    uniform_below(rng, pool.dummy_count + 1));
  for (std::uint32_t d = 0; d < pool.dummy_count; ++d) {
    Scalar m = d < pool.dummy_zero_count
                   ? params.scalar_from_u64(0)
                   : params.rand_scalar(rng);  // nonzero
    entries.push_back(he_encrypt(params, pk, m, rng));
    slots.push_back({0, 0, 0, true});
  }

  auto perm = rand_permutation(rng, static_cast<std::uint32_t>(entries.size()));
  pool.entries.reserve(entries.size());
  pool.slots.reserve(slots.size());
  for (auto idx : perm) {
    pool.entries.push_back(entries[idx]);
    pool.slots.push_back(slots[idx]);
  }
  return pool;
}

std::array<Ciphertext, 3> he_aggregate(const GroupParams& params,
                                       const GroupElement& pk,
                                       const HePool& pool,
                                       const std::vector<Ciphertext>& indicators,
                                       RandomSource& rng) {
  if (indicators.size() != pool.entries.size())
    throw ProtocolError("he: indicator count does not match the pool");
  std::array<Ciphertext, 3> sums = {he_encrypt_u32(params, pk, 0, rng),
                                    he_encrypt_u32(params, pk, 0, rng),
                                    he_encrypt_u32(params, pk, 0, rng)};
  for (std::size_t i = 0; i < indicators.size(); ++i) {
    const auto& slot = pool.slots[i];
    if (slot.dummy) continue;
    if (slot.matrix >= sums.size())
      throw ProtocolError("he: pool slot references an unknown matrix");
    sums[slot.matrix] = he_add(params, sums[slot.matrix], indicators[i]);
  }
  return sums;
}

}  // namespace lpp
