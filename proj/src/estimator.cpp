#include "loo/estimator.hpp"

#include <algorithm>

namespace loo {

namespace {

void check_prediction_target(const Adjacency& A, const Neighborhood& nbhd, Node j) {
  if (nbhd.members.empty()) throw ArgumentError("empty neighborhood");
  if (j >= A.size()) throw ArgumentError("target column out of range");
  for (Node k : nbhd.members) {
    if (k >= A.size()) throw ArgumentError("neighborhood member out of range");
  }
}

double column_mean(const Adjacency& A, std::span<const Node> members, Node j) {
  std::size_t hits = 0;
  for (Node k : members) hits += A(k, j);
  return static_cast<double>(hits) / static_cast<double>(members.size());
}

}  // namespace

double loo_predict(const Adjacency& A, const Neighborhood& nbhd, Node j) {
  check_prediction_target(A, nbhd, j);
  if (nbhd.anchor == j) throw ArgumentError("LOO prediction anchored at the target column");
  if (std::find(nbhd.members.begin(), nbhd.members.end(), j) != nbhd.members.end()) {
    throw ArgumentError("LOO neighborhood contains the target column");
  }
  return column_mean(A, nbhd.members, j);
}

double zlz_predict(const Adjacency& A, const Neighborhood& nbhd, Node j) {
  check_prediction_target(A, nbhd, j);
  return column_mean(A, nbhd.members, j);
}

EstimateMatrix symmetrize(SquareMatrix<double> tilde) {
  const std::size_t n = tilde.size();
  SquareMatrix<double> hat(n, 0.0);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      const double v = 0.5 * (tilde(i, j) + tilde(j, i));
      hat(i, j) = v;
      hat(j, i) = v;
    }
  }
  return {std::move(tilde), std::move(hat)};
}

Neighborhood NeighborhoodTable::at(Node i, Node j) const {
  Neighborhood out{i, j, {}, h_};
  const auto m = members(i, j);
  out.members.assign(m.begin(), m.end());
  return out;
}

LooFit fit_loo(const Adjacency& A, Bandwidth h, bool keep_neighborhoods) {
  const std::size_t n = A.size();
  h.check_for(n);
  const std::size_t hv = h.value();
  const TwoHop M = full_twohop(A);

  SquareMatrix<double> tilde(n, 0.0);
  NeighborhoodTable table = keep_neighborhoods ? NeighborhoodTable(n, hv) : NeighborhoodTable();
  const auto columns = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel
  {
    LooTwoHop view;
    SquareMatrix<PathCount> distance;
    std::vector<std::uint32_t> keys;
    keys.reserve(n);

#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t sj = 0; sj < columns; ++sj) {
      const auto j = static_cast<Node>(sj);
      loo_twohop_into(A, M, j, view);
      kernels::pairwise_distances(view.counts, distance, j, /*parallel=*/false);
      for (Node i = 0; i < n; ++i) {
        if (i == j) continue;
        kernels::candidate_keys(distance.row(i), i, j, keys);
        kernels::select_smallest(keys, hv);
        std::size_t hits = 0;
        for (std::size_t r = 0; r < hv; ++r) hits += A(kernels::key_node(keys[r]), j);
        tilde(i, j) = static_cast<double>(hits) / static_cast<double>(hv);
        if (keep_neighborhoods) {
          auto dst = table.members(i, j);
          for (std::size_t r = 0; r < hv; ++r) {
            dst[r] = static_cast<std::uint16_t>(kernels::key_node(keys[r]));
          }
        }
      }
    }
  }
  return {h, symmetrize(std::move(tilde)), std::move(table)};
}

EstimateMatrix fit_zlz(const Adjacency& A, Bandwidth h) {
  const std::size_t n = A.size();
  if (h.value() + 1 > n) throw ArgumentError("ZLZ bandwidth must be at most n - 1");
  const TwoHop M = full_twohop(A);
  SquareMatrix<PathCount> distance;
  kernels::pairwise_distances(M.counts, distance, kNoNode, /*parallel=*/true);

  SquareMatrix<double> tilde(n, 0.0);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint32_t> keys;
    std::vector<std::uint32_t> hits(n);
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t si = 0; si < rows; ++si) {
      const auto i = static_cast<Node>(si);
      kernels::candidate_keys(distance.row(i), i, kNoNode, keys);
      std::sort(keys.begin(), keys.end());
      const PathCount threshold = kernels::key_distance(keys[h.value() - 1]);
      std::fill(hits.begin(), hits.end(), 0u);
      std::size_t size = 0;
      for (std::uint32_t key : keys) {
        if (kernels::key_distance(key) > threshold) break;
        const auto a_k = A.row(kernels::key_node(key));
        for (Node j = 0; j < n; ++j) hits[j] += a_k[j];
        ++size;
      }
      for (Node j = 0; j < n; ++j) {
        if (j != i) tilde(i, j) = static_cast<double>(hits[j]) / static_cast<double>(size);
      }
    }
  }
  return symmetrize(std::move(tilde));
}

namespace oracle {

ErrorDecomposition error_decompose(const LatentSample& truth, const Neighborhood& nbhd,
                                   const Adjacency& A, Node i, Node j) {
  if (nbhd.members.empty()) throw ArgumentError("empty neighborhood");
  const double h = static_cast<double>(nbhd.members.size());
  double noise = 0.0;
  double signal = 0.0;
  std::size_t hits = 0;
  for (Node k : nbhd.members) {
    noise += static_cast<double>(A(k, j)) - truth.P(k, j);
    signal += truth.P(k, j);
    hits += A(k, j);
  }
  ErrorDecomposition out;
  out.U = noise / h;
  out.B = signal / h - truth.P(i, j);
  out.delta = static_cast<double>(hits) / h - truth.P(i, j);
  return out;
}

double localized_average(const LatentSample& truth, std::span<const std::uint16_t> members,
                         Node j) {
  double sum = 0.0;
  for (std::uint16_t k : members) sum += truth.P(k, j);
  return sum / static_cast<double>(members.size());
}

double localized_average(const LatentSample& truth, const Neighborhood& nbhd, Node j) {
  double sum = 0.0;
  for (Node k : nbhd.members) sum += truth.P(k, j);
  return sum / static_cast<double>(nbhd.members.size());
}

}  // namespace oracle

}  // namespace loo
