#pragma once

#include <span>
#include <vector>

#include "loo/common.hpp"
#include "loo/graphon.hpp"
#include "loo/neighborhood.hpp"

namespace loo {

struct CvResult {
  Node row = 0;
  std::vector<Bandwidth> grid;  // ascending, deduplicated
  std::vector<double> scores;   // R^_i(h) per grid value
  Bandwidth selected{2};        // smallest minimizer
};

/// {floor(c sqrt(n ln n)) : c in {0.5, 0.75, 1, 1.25, 1.5, 2}}, clamped and
/// deduplicated.
std::vector<Bandwidth> default_grid(std::size_t n);

/// Sorts, dedupes and validates a grid against n. Throws ArgumentError on an
/// empty grid or any value outside [2, n - 2].
std::vector<Bandwidth> normalize_grid(std::vector<Bandwidth> grid, std::size_t n);

/// Held-out predictions P~^(-j)_{ij}(h) for one row across a grid.
/// values[g][j] is the prediction with bandwidth grid[g]; values[g][row] = 0.
struct RowPredictions {
  Node row = 0;
  std::vector<Bandwidth> grid;
  std::vector<std::vector<double>> values;
};

/// One leave-j-out two-hop matrix per held-out column, shared by all rows.
/// Parallel over j; every neighborhood is built from A^(-j) only.
std::vector<RowPredictions> loo_row_predictions(const Adjacency& A, std::span<const Node> rows,
                                                std::span<const Bandwidth> grid);

/// (1/(n-1)) sum_{j != i} (A_ij - P~^(-j)_ij(h))^2.
double cv_score(const Adjacency& A, Node i, Bandwidth h);

CvResult cv_select(const Adjacency& A, Node i, std::vector<Bandwidth> grid);

struct GlobalCvResult {
  std::vector<CvResult> rows;
  Bandwidth selected{2};  // lower median of the per-row selections
};

GlobalCvResult cv_select_global(const Adjacency& A, std::span<const Node> rows,
                                std::vector<Bandwidth> grid);

/// `count` rows spread evenly over [0, n), always including row 0.
std::vector<Node> spread_rows(std::size_t n, std::size_t count);

namespace oracle {

/// R_i(h) = (1/(n-1)) sum_{j != i} (P_ij - P~^(-j)_ij(h))^2.
double oracle_prediction_risk(const LatentSample& truth, const Adjacency& A, Node i, Bandwidth h);

/// R_i(h) for every grid value, sharing one prediction pass.
std::vector<double> oracle_prediction_risks(const LatentSample& truth, const Adjacency& A, Node i,
                                            std::vector<Bandwidth> grid);

}  // namespace oracle

}  // namespace loo
