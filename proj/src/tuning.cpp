#include "loo/tuning.hpp"

#include <algorithm>

#include "loo/twohop.hpp"

namespace loo {

std::vector<Bandwidth> default_grid(std::size_t n) {
  std::vector<Bandwidth> grid;
  for (double scale : {0.5, 0.75, 1.0, 1.25, 1.5, 2.0}) grid.push_back(scaled_bandwidth(n, scale));
  return normalize_grid(std::move(grid), n);
}

std::vector<Bandwidth> normalize_grid(std::vector<Bandwidth> grid, std::size_t n) {
  if (grid.empty()) throw ArgumentError("bandwidth grid is empty");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (Bandwidth h : grid) h.check_for(n);
  return grid;
}

std::vector<RowPredictions> loo_row_predictions(const Adjacency& A, std::span<const Node> rows,
                                                std::span<const Bandwidth> grid) {
  const std::size_t n = A.size();
  for (Node i : rows) {
    if (i >= n) throw ArgumentError("row index out of range");
  }
  const std::vector<Bandwidth> sorted = normalize_grid({grid.begin(), grid.end()}, n);
  const std::size_t h_max = sorted.back().value();

  std::vector<RowPredictions> out;
  out.reserve(rows.size());
  for (Node i : rows) {
    out.push_back({i, sorted, std::vector<std::vector<double>>(sorted.size(),
                                                               std::vector<double>(n, 0.0))});
  }

  const TwoHop M = full_twohop(A);
  const auto columns = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    LooTwoHop view;
    std::vector<PathCount> distance(n, 0);
    std::vector<std::uint32_t> keys;
    std::vector<std::size_t> prefix(h_max + 1, 0);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t sj = 0; sj < columns; ++sj) {
      const auto j = static_cast<Node>(sj);
      loo_twohop_into(A, M, j, view);
      for (RowPredictions& target : out) {
        const Node i = target.row;
        if (i == j) continue;
        const auto row_i = view.counts.row(i);
        for (Node k = 0; k < n; ++k) {
          distance[k] = (k == i || k == j) ? PathCount{0}
                                           : kernels::max_abs_diff(row_i, view.counts.row(k),
                                                                   std::min(i, k), std::max(i, k));
        }
        kernels::candidate_keys(distance, i, j, keys);
        kernels::select_smallest(keys, h_max);
        for (std::size_t r = 0; r < h_max; ++r) {
          prefix[r + 1] = prefix[r] + A(kernels::key_node(keys[r]), j);
        }
        for (std::size_t g = 0; g < sorted.size(); ++g) {
          const std::size_t h = sorted[g].value();
          target.values[g][j] = static_cast<double>(prefix[h]) / static_cast<double>(h);
        }
      }
    }
  }
  return out;
}

namespace {

CvResult score_row(const Adjacency& A, const RowPredictions& pred) {
  const std::size_t n = A.size();
  CvResult result;
  result.row = pred.row;
  result.grid = pred.grid;
  result.scores.reserve(pred.grid.size());
  for (std::size_t g = 0; g < pred.grid.size(); ++g) {
    double sum = 0.0;
    for (Node j = 0; j < n; ++j) {
      if (j == pred.row) continue;
      const double err = static_cast<double>(A(pred.row, j)) - pred.values[g][j];
      sum += err * err;
    }
    result.scores.push_back(sum / static_cast<double>(n - 1));
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < result.scores.size(); ++g) {
    if (result.scores[g] < result.scores[best]) best = g;
  }
  result.selected = result.grid[best];
  return result;
}

}  // namespace

double cv_score(const Adjacency& A, Node i, Bandwidth h) {
  return cv_select(A, i, {h}).scores.front();
}

CvResult cv_select(const Adjacency& A, Node i, std::vector<Bandwidth> grid) {
  const Node rows[] = {i};
  const auto predictions = loo_row_predictions(A, rows, grid);
  return score_row(A, predictions.front());
}

GlobalCvResult cv_select_global(const Adjacency& A, std::span<const Node> rows,
                                std::vector<Bandwidth> grid) {
  if (rows.empty()) throw ArgumentError("no rows to tune on");
  const auto predictions = loo_row_predictions(A, rows, grid);
  GlobalCvResult out;
  std::vector<Bandwidth> picks;
  for (const RowPredictions& pred : predictions) {
    out.rows.push_back(score_row(A, pred));
    picks.push_back(out.rows.back().selected);
  }
  std::sort(picks.begin(), picks.end());
  out.selected = picks[(picks.size() - 1) / 2];
  return out;
}

std::vector<Node> spread_rows(std::size_t n, std::size_t count) {
  if (n == 0 || count == 0) throw ArgumentError("spread_rows needs n > 0 and count > 0");
  count = std::min(count, n);
  std::vector<Node> rows;
  rows.reserve(count);
  for (std::size_t r = 0; r < count; ++r) rows.push_back(r * n / count);
  return rows;
}

namespace oracle {

std::vector<double> oracle_prediction_risks(const LatentSample& truth, const Adjacency& A, Node i,
                                            std::vector<Bandwidth> grid) {
  if (truth.size() != A.size()) throw ArgumentError("truth and adjacency sizes differ");
  const Node rows[] = {i};
  const auto predictions = loo_row_predictions(A, rows, grid);
  const RowPredictions& pred = predictions.front();
  const std::size_t n = A.size();
  std::vector<double> risks;
  for (std::size_t g = 0; g < pred.grid.size(); ++g) {
    double sum = 0.0;
    for (Node j = 0; j < n; ++j) {
      if (j == i) continue;
      const double err = truth.P(i, j) - pred.values[g][j];
      sum += err * err;
    }
    risks.push_back(sum / static_cast<double>(n - 1));
  }
  return risks;
}

double oracle_prediction_risk(const LatentSample& truth, const Adjacency& A, Node i, Bandwidth h) {
  return oracle_prediction_risks(truth, A, i, {h}).front();
}

}  // namespace oracle

}  // namespace loo
