#pragma once

#include <vector>

#include "loo/common.hpp"
#include "loo/graphon.hpp"

/// Serial, direct transcriptions of each kernel. Nothing here shares code
/// with the optimized path: node deletion is done by building the reduced
/// matrix, products are plain triple loops and neighborhoods come from a
/// full sort. Used as test oracles and as the bench baseline.
namespace loo::reference {

/// A^2 by triple loop.
SquareMatrix<long> square(const Adjacency& A);

/// Deletes row and column j, squares the (n-1) x (n-1) result and maps it
/// back to original indices. Row and column j are zero.
SquareMatrix<long> delete_and_square(const Adjacency& A, Node j);

/// max over l outside {i, k, j} of |C_il - C_kl| / (n - 1) where C is the
/// output of delete_and_square(A, j).
double loo_distance(const SquareMatrix<long>& reduced_square, Node i, Node k, Node j);

/// max over l outside {i, k} of |C_il - C_kl| / n; zero for i == k.
double zlz_distance(const SquareMatrix<long>& square, Node i, Node k);

/// Full sort of V \ {i, j} by (distance, index); first h entries.
std::vector<Node> loo_neighborhood(const SquareMatrix<long>& reduced_square, Node i, Node j,
                                   std::size_t h);

/// Sorted threshold set: all k != i with distance <= h-th smallest.
std::vector<Node> zlz_neighborhood(const SquareMatrix<long>& square, Node i, std::size_t h);

/// P~ for every ordered pair, one delete_and_square per column.
SquareMatrix<double> fit_loo_tilde(const Adjacency& A, std::size_t h);

/// Classical one-sided estimates.
SquareMatrix<double> fit_zlz_tilde(const Adjacency& A, std::size_t h);

/// R^_i(h) with A^(-j) rebuilt from scratch for every held-out column.
double cv_score(const Adjacency& A, Node i, std::size_t h);

}  // namespace loo::reference
