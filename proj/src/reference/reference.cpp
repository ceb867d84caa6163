#include "loo/reference.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace loo::reference {

SquareMatrix<long> square(const Adjacency& A) {
  const std::size_t n = A.size();
  SquareMatrix<long> C(n, 0);
  for (Node i = 0; i < n; ++i) {
    for (Node l = 0; l < n; ++l) {
      long sum = 0;
      for (Node m = 0; m < n; ++m) sum += static_cast<long>(A(i, m)) * A(m, l);
      C(i, l) = sum;
    }
  }
  return C;
}

SquareMatrix<long> delete_and_square(const Adjacency& A, Node j) {
  const std::size_t n = A.size();
  std::vector<Node> keep;
  for (Node v = 0; v < n; ++v) {
    if (v != j) keep.push_back(v);
  }
  const std::size_t m = keep.size();
  SquareMatrix<long> reduced(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) reduced(r, c) = A(keep[r], keep[c]);
  }
  SquareMatrix<long> out(n, 0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      long sum = 0;
      for (std::size_t t = 0; t < m; ++t) sum += reduced(r, t) * reduced(t, c);
      out(keep[r], keep[c]) = sum;
    }
  }
  return out;
}

double loo_distance(const SquareMatrix<long>& reduced_square, Node i, Node k, Node j) {
  const std::size_t n = reduced_square.size();
  double best = 0.0;
  for (Node l = 0; l < n; ++l) {
    if (l == i || l == k || l == j) continue;
    const long diff = std::abs(reduced_square(i, l) - reduced_square(k, l));
    best = std::max(best, static_cast<double>(diff) / static_cast<double>(n - 1));
  }
  return best;
}

double zlz_distance(const SquareMatrix<long>& square, Node i, Node k) {
  if (i == k) return 0.0;
  const std::size_t n = square.size();
  double best = 0.0;
  for (Node l = 0; l < n; ++l) {
    if (l == i || l == k) continue;
    const long diff = std::abs(square(i, l) - square(k, l));
    best = std::max(best, static_cast<double>(diff) / static_cast<double>(n));
  }
  return best;
}

std::vector<Node> loo_neighborhood(const SquareMatrix<long>& reduced_square, Node i, Node j,
                                   std::size_t h) {
  std::vector<std::pair<double, Node>> ranked;
  for (Node k = 0; k < reduced_square.size(); ++k) {
    if (k == i || k == j) continue;
    ranked.emplace_back(loo_distance(reduced_square, i, k, j), k);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<Node> members;
  for (std::size_t r = 0; r < h && r < ranked.size(); ++r) members.push_back(ranked[r].second);
  return members;
}

std::vector<Node> zlz_neighborhood(const SquareMatrix<long>& square, Node i, std::size_t h) {
  std::vector<std::pair<double, Node>> ranked;
  for (Node k = 0; k < square.size(); ++k) {
    if (k != i) ranked.emplace_back(zlz_distance(square, i, k), k);
  }
  std::sort(ranked.begin(), ranked.end());
  const double threshold = ranked[h - 1].first;
  std::vector<Node> members;
  for (const auto& [d, k] : ranked) {
    if (d <= threshold) members.push_back(k);
  }
  return members;
}

SquareMatrix<double> fit_loo_tilde(const Adjacency& A, std::size_t h) {
  const std::size_t n = A.size();
  SquareMatrix<double> tilde(n, 0.0);
  for (Node j = 0; j < n; ++j) {
    const SquareMatrix<long> reduced = delete_and_square(A, j);
    for (Node i = 0; i < n; ++i) {
      if (i == j) continue;
      double sum = 0.0;
      for (Node k : loo_neighborhood(reduced, i, j, h)) sum += A(k, j);
      tilde(i, j) = sum / static_cast<double>(h);
    }
  }
  return tilde;
}

SquareMatrix<double> fit_zlz_tilde(const Adjacency& A, std::size_t h) {
  const std::size_t n = A.size();
  const SquareMatrix<long> C = square(A);
  SquareMatrix<double> tilde(n, 0.0);
  for (Node i = 0; i < n; ++i) {
    const auto members = zlz_neighborhood(C, i, h);
    for (Node j = 0; j < n; ++j) {
      if (j == i) continue;
      double sum = 0.0;
      for (Node k : members) sum += A(k, j);
      tilde(i, j) = sum / static_cast<double>(members.size());
    }
  }
  return tilde;
}

double cv_score(const Adjacency& A, Node i, std::size_t h) {
  const std::size_t n = A.size();
  double total = 0.0;
  for (Node j = 0; j < n; ++j) {
    if (j == i) continue;
    const SquareMatrix<long> reduced = delete_and_square(A, j);
    double sum = 0.0;
    for (Node k : loo_neighborhood(reduced, i, j, h)) sum += A(k, j);
    const double err = static_cast<double>(A(i, j)) - sum / static_cast<double>(h);
    total += err * err;
  }
  return total / static_cast<double>(n - 1);
}

}  // namespace loo::reference
