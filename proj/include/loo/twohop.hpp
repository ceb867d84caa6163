#pragma once

#include <cstdint>
#include <limits>
#include <span>

#include "loo/common.hpp"
#include "loo/graphon.hpp"

namespace loo {

/// Integer two-hop path count. Counts are bounded by n - 1 <= kMaxNodes.
using PathCount = std::int16_t;

inline constexpr Node kNoNode = std::numeric_limits<Node>::max();

/// Normalized two-hop matrix M = A^2 / n, held as exact path counts.
struct TwoHop {
  SquareMatrix<PathCount> counts;  // (A^2)_{il}

  std::size_t size() const noexcept { return counts.size(); }
  double operator()(Node i, Node l) const noexcept {
    return static_cast<double>(counts(i, l)) / static_cast<double>(size());
  }
};

/// Two-hop matrix of the graph with node `excluded` deleted,
/// M^(-j) = (A^(-j))^2 / (n - 1), kept at the original indices.
/// Row and column `excluded` are zero and carry no meaning.
struct LooTwoHop {
  Node excluded = kNoNode;
  SquareMatrix<PathCount> counts;

  std::size_t size() const noexcept { return counts.size(); }
  double operator()(Node i, Node l) const noexcept {
    return static_cast<double>(counts(i, l)) / static_cast<double>(size() - 1);
  }
};

/// Bit-packed popcount product; parallel over output rows.
TwoHop full_twohop(const Adjacency& A);

/// Rank correction (A^2)_{il} - A_{ij} A_{jl}; O(n^2).
LooTwoHop loo_twohop(const Adjacency& A, const TwoHop& M, Node j);

/// Same as loo_twohop() but reuses the storage in `out`.
void loo_twohop_into(const Adjacency& A, const TwoHop& M, Node j, LooTwoHop& out);

/// max over l outside {i, k, j} of |M^(-j)_{il} - M^(-j)_{kl}|.
/// Throws ArgumentError unless i, k and j are distinct and in range.
double loo_distance(const LooTwoHop& view, Node i, Node k);

/// max over l outside {i, k} of |M_{il} - M_{kl}|; zero when i == k.
double zlz_distance(const TwoHop& M, Node i, Node k);

namespace kernels {

/// max |a_l - b_l| over all l except skip_lo and skip_hi (skip_lo < skip_hi).
PathCount max_abs_diff(std::span<const PathCount> a, std::span<const PathCount> b,
                       Node skip_lo, Node skip_hi) noexcept;

/// Integer row distances for every pair (i, k) with i != k, both != skip.
/// `out` is resized to n x n and filled symmetrically; entries touching
/// `skip` and the diagonal are zero. With `parallel`, the outer row loop
/// runs on the OpenMP team.
void pairwise_distances(const SquareMatrix<PathCount>& counts, SquareMatrix<PathCount>& out,
                        Node skip, bool parallel);

}  // namespace kernels

}  // namespace loo
