#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loo/common.hpp"
#include "loo/twohop.hpp"

namespace loo {

/// Neighbor count h. Construction only requires h >= 1; the valid range
/// against a particular network is enforced by check_for().
class Bandwidth {
 public:
  constexpr explicit Bandwidth(std::size_t h) : h_(h) {
    if (h == 0) throw DomainError("bandwidth must be positive");
  }

  constexpr std::size_t value() const noexcept { return h_; }

  /// Throws ArgumentError unless 2 <= h <= n - 2.
  void check_for(std::size_t n) const;

  constexpr auto operator<=>(const Bandwidth&) const = default;

 private:
  std::size_t h_;
};

/// floor(1.5 sqrt(n ln n)) clamped to [2, n - 2]. Requires n >= 8.
Bandwidth default_bandwidth(std::size_t n);

/// floor(sqrt(n) / ln n) clamped to [2, n - 2]. Requires n >= 8.
Bandwidth undersmooth_bandwidth(std::size_t n);

/// floor(scale sqrt(n ln n)) clamped to [2, n - 2].
Bandwidth scaled_bandwidth(std::size_t n, double scale);

struct Neighborhood {
  Node anchor = 0;
  std::optional<Node> excluded;  // deleted node for LOO, none for ZLZ
  std::vector<Node> members;     // ascending by (distance, index)
  std::size_t target = 0;        // requested h
};

/// The h nodes of V \ {i, j} closest to i under the leave-j-out distance,
/// ties resolved toward smaller indices. Reads nothing from row/column j.
Neighborhood loo_neighborhood(const LooTwoHop& view, Node i, Bandwidth h);

/// All k != i whose ZLZ distance is at most the h-th smallest distance.
/// May return more than h members under ties. Requires h <= n - 1.
Neighborhood zlz_neighborhood(const TwoHop& M, Node i, Bandwidth h);

namespace kernels {

/// Composite (distance, index) key; ordering on it is the tie rule.
inline std::uint32_t selection_key(PathCount distance, Node k) noexcept {
  return (static_cast<std::uint32_t>(distance) << 16) | static_cast<std::uint32_t>(k);
}
inline Node key_node(std::uint32_t key) noexcept { return key & 0xFFFFu; }
inline PathCount key_distance(std::uint32_t key) noexcept {
  return static_cast<PathCount>(key >> 16);
}

/// Fills `keys` with the keys of every k outside {i, skip} (skip may be
/// kNoNode), using distances from `distance_row`.
void candidate_keys(std::span<const PathCount> distance_row, Node i, Node skip,
                    std::vector<std::uint32_t>& keys);

/// Partially selects the h smallest keys and sorts them into keys[0, h).
void select_smallest(std::vector<std::uint32_t>& keys, std::size_t h);

}  // namespace kernels

}  // namespace loo
