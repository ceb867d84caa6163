#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loo/common.hpp"
#include "loo/rng.hpp"

namespace loo {

enum class GraphonFamily { Smooth, Block, Wiggly, RankOne, Spiky, Constant };

/// Latent kernel f(u, v) on the unit square.
///
/// The five named families are the simulation benchmarks; `constant(c)` has
/// zero neighborhood bias and exists for exact oracle tests.
class GraphonModel {
 public:
  static GraphonModel smooth();
  static GraphonModel block(double p_in = 0.7, double p_out = 0.3);
  static GraphonModel wiggly();
  static GraphonModel rank_one();
  static GraphonModel spiky();
  static GraphonModel constant(double level);

  /// Accepts `smooth|block|wiggly|rank1|spiky|constant:<c>`.
  /// Throws ArgumentError on anything else.
  static GraphonModel parse(std::string_view name);

  GraphonFamily family() const noexcept { return family_; }
  /// Name in the form accepted by parse().
  std::string name() const;

  /// Throws DomainError if u or v lies outside [0, 1].
  double operator()(double u, double v) const;

  bool operator==(const GraphonModel&) const = default;

 private:
  GraphonModel(GraphonFamily family, double a, double b) : family_(family), a_(a), b_(b) {}

  GraphonFamily family_ = GraphonFamily::Smooth;
  double a_ = 0.0;  // Block: p_in, Constant: level
  double b_ = 0.0;  // Block: p_out
};

inline double eval(const GraphonModel& model, double u, double v) { return model(u, v); }

/// Latent positions and the edge probability matrix they induce.
struct LatentSample {
  GraphonModel model;
  std::vector<double> xi;
  SquareMatrix<double> P;  // P(i, j) = f(xi_i, xi_j), diagonal unused

  std::size_t size() const noexcept { return xi.size(); }
};

/// Draws xi i.i.d. uniform on [0, 1]. Requires n >= 3.
LatentSample sample_latent(const GraphonModel& model, std::size_t n, Rng& rng);

/// Builds P from caller-chosen positions.
LatentSample latent_from_positions(const GraphonModel& model, std::vector<double> xi);

/// Symmetric binary matrix with zero diagonal. Mutation goes through
/// set_edge(), which keeps both invariants.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(std::size_t n);

  std::size_t size() const noexcept { return entries_.size(); }

  std::uint8_t operator()(Node i, Node j) const noexcept { return entries_(i, j); }
  std::span<const std::uint8_t> row(Node i) const noexcept { return entries_.row(i); }

  /// Sets A(i, j) = A(j, i). Throws ArgumentError for i == j or out of range.
  void set_edge(Node i, Node j, bool present);

  std::size_t degree(Node i) const;
  std::size_t edge_count() const;

  const SquareMatrix<std::uint8_t>& entries() const noexcept { return entries_; }

  bool operator==(const Adjacency&) const = default;

 private:
  SquareMatrix<std::uint8_t> entries_;
};

/// Independent Bernoulli(P_ij) for i < j, mirrored below the diagonal.
Adjacency sample_adjacency(const LatentSample& sample, Rng& rng);

}  // namespace loo
