#include "loo/twohop.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

namespace loo {

namespace {

void check_node(Node v, std::size_t n, const char* what) {
  if (v >= n) throw ArgumentError(std::string(what) + " index out of range");
}

}  // namespace

TwoHop full_twohop(const Adjacency& A) {
  const std::size_t n = A.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(n * words, 0);
  for (Node i = 0; i < n; ++i) {
    const auto row = A.row(i);
    for (Node l = 0; l < n; ++l) {
      if (row[l]) bits[i * words + l / 64] |= std::uint64_t{1} << (l % 64);
    }
  }

  TwoHop M{SquareMatrix<PathCount>(n)};
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t si = 0; si < rows; ++si) {
    const auto i = static_cast<Node>(si);
    const std::uint64_t* ri = bits.data() + i * words;
    for (Node l = i; l < n; ++l) {
      const std::uint64_t* rl = bits.data() + l * words;
      int paths = 0;
      for (std::size_t w = 0; w < words; ++w) paths += std::popcount(ri[w] & rl[w]);
      M.counts(i, l) = static_cast<PathCount>(paths);
      M.counts(l, i) = static_cast<PathCount>(paths);
    }
  }
  return M;
}

void loo_twohop_into(const Adjacency& A, const TwoHop& M, Node j, LooTwoHop& out) {
  const std::size_t n = A.size();
  check_node(j, n, "deleted node");
  if (M.size() != n) throw ArgumentError("two-hop matrix does not match adjacency");
  if (out.counts.size() != n) out.counts = SquareMatrix<PathCount>(n);
  out.excluded = j;

  const auto a_j = A.row(j);
  for (Node i = 0; i < n; ++i) {
    auto dst = out.counts.row(i);
    if (i == j) {
      std::fill(dst.begin(), dst.end(), PathCount{0});
      continue;
    }
    const auto src = M.counts.row(i);
    if (A(i, j)) {
      for (Node l = 0; l < n; ++l) dst[l] = static_cast<PathCount>(src[l] - a_j[l]);
    } else {
      std::copy(src.begin(), src.end(), dst.begin());
    }
    dst[j] = 0;
  }
}

LooTwoHop loo_twohop(const Adjacency& A, const TwoHop& M, Node j) {
  LooTwoHop view;
  loo_twohop_into(A, M, j, view);
  return view;
}

namespace kernels {

namespace {

inline PathCount span_max(const PathCount* a, const PathCount* b, std::size_t len,
                          PathCount acc) noexcept {
  for (std::size_t l = 0; l < len; ++l) {
    const PathCount d = a[l] > b[l] ? static_cast<PathCount>(a[l] - b[l])
                                    : static_cast<PathCount>(b[l] - a[l]);
    acc = std::max(acc, d);
  }
  return acc;
}

}  // namespace

PathCount max_abs_diff(std::span<const PathCount> a, std::span<const PathCount> b,
                       Node skip_lo, Node skip_hi) noexcept {
  const std::size_t n = a.size();
  const PathCount* pa = a.data();
  const PathCount* pb = b.data();
  PathCount acc = 0;
  acc = span_max(pa, pb, skip_lo, acc);
  acc = span_max(pa + skip_lo + 1, pb + skip_lo + 1, skip_hi - skip_lo - 1, acc);
  if (skip_hi + 1 < n) acc = span_max(pa + skip_hi + 1, pb + skip_hi + 1, n - skip_hi - 1, acc);
  return acc;
}

void pairwise_distances(const SquareMatrix<PathCount>& counts, SquareMatrix<PathCount>& out,
                        Node skip, bool parallel) {
  const std::size_t n = counts.size();
  if (out.size() != n) out = SquareMatrix<PathCount>(n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::ptrdiff_t si = 0; si < rows; ++si) {
    const auto i = static_cast<Node>(si);
    out(i, i) = 0;
    if (i == skip) {
      for (Node k = 0; k < n; ++k) {
        out(i, k) = 0;
        out(k, i) = 0;
      }
      continue;
    }
    const auto row_i = counts.row(i);
    for (Node k = i + 1; k < n; ++k) {
      if (k == skip) continue;
      const PathCount d = max_abs_diff(row_i, counts.row(k), i, k);
      out(i, k) = d;
      out(k, i) = d;
    }
  }
}

}  // namespace kernels

double loo_distance(const LooTwoHop& view, Node i, Node k) {
  const std::size_t n = view.size();
  check_node(i, n, "anchor");
  check_node(k, n, "candidate");
  if (i == k) throw ArgumentError("loo_distance needs distinct nodes");
  if (i == view.excluded || k == view.excluded) {
    throw ArgumentError("loo_distance argument collides with the deleted node");
  }
  const PathCount d = kernels::max_abs_diff(view.counts.row(i), view.counts.row(k),
                                            std::min(i, k), std::max(i, k));
  return static_cast<double>(d) / static_cast<double>(n - 1);
}

double zlz_distance(const TwoHop& M, Node i, Node k) {
  const std::size_t n = M.size();
  check_node(i, n, "anchor");
  check_node(k, n, "candidate");
  if (i == k) return 0.0;
  const PathCount d =
      kernels::max_abs_diff(M.counts.row(i), M.counts.row(k), std::min(i, k), std::max(i, k));
  return static_cast<double>(d) / static_cast<double>(n);
}

}  // namespace loo
