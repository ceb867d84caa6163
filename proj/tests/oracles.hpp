#pragma once

// Independent test oracles. Nothing here calls into the optimized kernels.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "loo/common.hpp"
#include "loo/graphon.hpp"
#include "loo/rng.hpp"

namespace oracle_test {

using loo::Adjacency;
using loo::Node;

/// Pairwise form: sum over unordered pairs of (x_k - x_l)^2 / (h (h - 1)).
inline double pairwise_sample_variance(const std::vector<int>& x) {
  const std::size_t h = x.size();
  double total = 0.0;
  for (std::size_t k = 0; k < h; ++k) {
    for (std::size_t l = k + 1; l < h; ++l) {
      const double d = x[k] - x[l];
      total += d * d;
    }
  }
  return total / (static_cast<double>(h) * static_cast<double>(h - 1));
}

/// Midpoint rule on a grid x grid mesh.
template <class F>
double double_integral(F f, int grid) {
  double total = 0.0;
  const double step = 1.0 / grid;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) total += f((a + 0.5) * step, (b + 0.5) * step);
  }
  return total * step * step;
}

inline Adjacency random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  Adjacency A(n);
  std::bernoulli_distribution coin(density);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) A.set_edge(i, j, coin(rng));
  }
  return A;
}

inline Adjacency complete_graph(std::size_t n) {
  Adjacency A(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) A.set_edge(i, j, true);
  }
  return A;
}

/// Sum of A_kj over the given members.
template <class Members>
long adjacent_count(const Adjacency& A, const Members& members, Node j) {
  long s = 0;
  for (auto k : members) s += A(static_cast<Node>(k), j);
  return s;
}

struct RunningStats {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const { return std::sqrt(variance() / static_cast<double>(count)); }
};

}  // namespace oracle_test
