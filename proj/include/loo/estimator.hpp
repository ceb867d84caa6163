#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "loo/common.hpp"
#include "loo/graphon.hpp"
#include "loo/neighborhood.hpp"
#include "loo/twohop.hpp"

namespace loo {

/// One-sided predictions and their symmetrization. Diagonals are zero.
struct EstimateMatrix {
  SquareMatrix<double> tilde;  // P~_{ij}, generally asymmetric
  SquareMatrix<double> hat;    // (P~_{ij} + P~_{ji}) / 2

  std::size_t size() const noexcept { return tilde.size(); }
};

/// Mean of A_{kj} over the neighborhood members. Throws ArgumentError for
/// an empty neighborhood or one containing j or anchored at j.
double loo_predict(const Adjacency& A, const Neighborhood& nbhd, Node j);

/// Mean of A_{kj} over the realized (variable-size) ZLZ member set.
double zlz_predict(const Adjacency& A, const Neighborhood& nbhd, Node j);

EstimateMatrix symmetrize(SquareMatrix<double> tilde);

/// Flat store of every LOO neighborhood N_i^(-j), h members each.
class NeighborhoodTable {
 public:
  NeighborhoodTable() = default;
  NeighborhoodTable(std::size_t n, std::size_t h) : n_(n), h_(h), members_(n * n * h, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t bandwidth() const noexcept { return h_; }
  bool empty() const noexcept { return members_.empty(); }

  std::span<const std::uint16_t> members(Node i, Node j) const noexcept {
    return {members_.data() + (i * n_ + j) * h_, h_};
  }
  std::span<std::uint16_t> members(Node i, Node j) noexcept {
    return {members_.data() + (i * n_ + j) * h_, h_};
  }

  Neighborhood at(Node i, Node j) const;

 private:
  std::size_t n_ = 0;
  std::size_t h_ = 0;
  std::vector<std::uint16_t> members_;
};

struct LooFit {
  Bandwidth h;
  EstimateMatrix estimates;
  NeighborhoodTable neighborhoods;  // empty unless requested
};

/// LOO smoother over every ordered pair. The j loop runs on the OpenMP
/// team; each j owns its scratch and writes only column j, so the result
/// does not depend on the thread count.
LooFit fit_loo(const Adjacency& A, Bandwidth h, bool keep_neighborhoods = true);

/// Classical smoother with quantile neighborhoods from the full graph.
EstimateMatrix fit_zlz(const Adjacency& A, Bandwidth h);

/// Simulation-only quantities. Everything here needs the true P.
namespace oracle {

struct ErrorDecomposition {
  double U = 0.0;      // (1/h) sum_k (A_kj - P_kj)
  double B = 0.0;      // (1/h) sum_k P_kj - P_ij
  double delta = 0.0;  // P~_ij - P_ij
};

ErrorDecomposition error_decompose(const LatentSample& truth, const Neighborhood& nbhd,
                                   const Adjacency& A, Node i, Node j);

/// (1/h) sum over members of P_kj.
double localized_average(const LatentSample& truth, std::span<const std::uint16_t> members,
                         Node j);
double localized_average(const LatentSample& truth, const Neighborhood& nbhd, Node j);

}  // namespace oracle

}  // namespace loo
