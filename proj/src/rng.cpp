#include "loo/rng.hpp"

#include <array>

namespace loo {

std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index) {
  std::array<std::uint32_t, 5> words{
      static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
      static_cast<std::uint32_t>(index >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index) {
  return Rng(derive_seed(master, stream, index));
}

}  // namespace loo
