#include "loo/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace loo {

void Bandwidth::check_for(std::size_t n) const {
  if (h_ < 2 || h_ + 2 > n) {
    throw ArgumentError("bandwidth h=" + std::to_string(h_) + " outside [2, n-2] for n=" +
                        std::to_string(n));
  }
}

Bandwidth scaled_bandwidth(std::size_t n, double scale) {
  if (n < 8) throw DomainError("bandwidth rule needs n >= 8");
  const double nn = static_cast<double>(n);
  const auto raw = static_cast<std::size_t>(std::floor(scale * std::sqrt(nn * std::log(nn))));
  return Bandwidth(std::clamp<std::size_t>(raw, 2, n - 2));
}

Bandwidth default_bandwidth(std::size_t n) { return scaled_bandwidth(n, 1.5); }

Bandwidth undersmooth_bandwidth(std::size_t n) {
  if (n < 8) throw DomainError("bandwidth rule needs n >= 8");
  const double nn = static_cast<double>(n);
  const auto raw = static_cast<std::size_t>(std::floor(std::sqrt(nn) / std::log(nn)));
  return Bandwidth(std::clamp<std::size_t>(raw, 2, n - 2));
}

namespace kernels {

void candidate_keys(std::span<const PathCount> distance_row, Node i, Node skip,
                    std::vector<std::uint32_t>& keys) {
  keys.clear();
  for (Node k = 0; k < distance_row.size(); ++k) {
    if (k == i || k == skip) continue;
    keys.push_back(selection_key(distance_row[k], k));
  }
}

void select_smallest(std::vector<std::uint32_t>& keys, std::size_t h) {
  if (h < keys.size()) {
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(h), keys.end());
  }
  std::sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(std::min(h, keys.size())));
}

}  // namespace kernels

Neighborhood loo_neighborhood(const LooTwoHop& view, Node i, Bandwidth h) {
  const std::size_t n = view.size();
  const Node j = view.excluded;
  if (i >= n) throw ArgumentError("anchor index out of range");
  if (i == j) throw ArgumentError("anchor coincides with the deleted node");
  h.check_for(n);

  std::vector<PathCount> distance(n, 0);
  const auto row_i = view.counts.row(i);
  for (Node k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    distance[k] = kernels::max_abs_diff(row_i, view.counts.row(k), std::min(i, k), std::max(i, k));
  }

  std::vector<std::uint32_t> keys;
  keys.reserve(n);
  kernels::candidate_keys(distance, i, j, keys);
  kernels::select_smallest(keys, h.value());

  Neighborhood out{i, j, {}, h.value()};
  out.members.reserve(h.value());
  for (std::size_t r = 0; r < h.value(); ++r) out.members.push_back(kernels::key_node(keys[r]));
  return out;
}

Neighborhood zlz_neighborhood(const TwoHop& M, Node i, Bandwidth h) {
  const std::size_t n = M.size();
  if (i >= n) throw ArgumentError("anchor index out of range");
  if (h.value() + 1 > n) throw ArgumentError("ZLZ bandwidth must be at most n - 1");

  std::vector<PathCount> distance(n, 0);
  const auto row_i = M.counts.row(i);
  for (Node k = 0; k < n; ++k) {
    if (k == i) continue;
    distance[k] = kernels::max_abs_diff(row_i, M.counts.row(k), std::min(i, k), std::max(i, k));
  }

  std::vector<std::uint32_t> keys;
  keys.reserve(n);
  kernels::candidate_keys(distance, i, kNoNode, keys);
  std::sort(keys.begin(), keys.end());
  const PathCount threshold = kernels::key_distance(keys[h.value() - 1]);

  Neighborhood out{i, std::nullopt, {}, h.value()};
  for (std::uint32_t key : keys) {
    if (kernels::key_distance(key) > threshold) break;
    out.members.push_back(kernels::key_node(key));
  }
  return out;
}

}  // namespace loo
