#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace lpp {

// Byte-stream randomness source. Protocol sessions take one of these so that
// production runs use the OS CSPRNG while tests can replay a fixed stream.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;
};

// OS-backed CSPRNG.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

// SHA-256 counter stream; identical output for identical seeds on every
// platform. Test and tooling use only.
class DeterministicRandom final : public RandomSource {
 public:
  explicit DeterministicRandom(std::uint64_t seed) : seed_(seed) {}
  void fill(std::span<std::uint8_t> out) override;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t block_used_ = 32;
};

std::uint64_t rand_u64(RandomSource& rng);

// Unbiased uniform draw from [0, n). n must be nonzero.
std::uint64_t uniform_below(RandomSource& rng, std::uint64_t n);

// Uniform permutation of [0, n) (Fisher-Yates).
std::vector<std::uint32_t> rand_permutation(RandomSource& rng, std::uint32_t n);

}  // namespace lpp
