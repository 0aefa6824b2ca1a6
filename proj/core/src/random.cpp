#include "lpp/random.hpp"

#include <cstring>

#include <openssl/rand.h>

#include "lpp/errors.hpp"
#include "lpp/group.hpp"

namespace lpp {

void SystemRandom::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw Error("system CSPRNG failure");
  }
}

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (block_used_ == block_.size()) {
      std::uint8_t input[16];
      for (int i = 0; i < 8; ++i) {
        input[i] = static_cast<std::uint8_t>(seed_ >> (56 - 8 * i));
        input[8 + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
      }
      block_ = sha256(BytesView(input, sizeof input));
      block_used_ = 0;
      ++counter_;
    }
    std::size_t take = std::min(out.size() - pos, block_.size() - block_used_);
    std::memcpy(out.data() + pos, block_.data() + block_used_, take);
    pos += take;
    block_used_ += take;
  }
}

std::uint64_t rand_u64(RandomSource& rng) {
  std::uint8_t buf[8];
  rng.fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = v << 8 | b;
  return v;
}

std::uint64_t uniform_below(RandomSource& rng, std::uint64_t n) {
  if (n == 0) throw InvalidInputError("uniform_below: n must be nonzero");
  // rejection below the largest multiple of n
  std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t u = rand_u64(rng);
    if (u >= rem) return (u - rem) % n;
  }
}

std::vector<std::uint32_t> rand_permutation(RandomSource& rng, std::uint32_t n) {
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  for (std::uint32_t i = n; i > 1; --i) {
    auto j = static_cast<std::uint32_t>(uniform_below(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace lpp
