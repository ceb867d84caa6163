#pragma once

#include <cstdint>
#include <random>

namespace loo {

using Rng = std::mt19937_64;

/// Named substreams spawned from one master seed. Each task owns its own
/// generator, so execution order never changes what a task draws.
enum class Stream : std::uint32_t {
  Latent = 1,
  Edges = 2,
  Replicate = 3,
  Resample = 4,
  Trial = 5,
  RowSample = 6,
};

inline constexpr std::uint64_t kDefaultSeed = 12345;

/// Deterministic 64-bit seed for substream (stream, index) of `master`.
std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0);

Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index = 0);

}  // namespace loo
