#include "doctest.h"
#include "loo/estimator.hpp"
#include "loo/reference.hpp"
#include "loo/tuning.hpp"
#include "oracles.hpp"

#include <omp.h>

#include <cmath>

using namespace loo;

namespace {

std::vector<Bandwidth> grid_of(std::initializer_list<std::size_t> values) {
  std::vector<Bandwidth> g;
  for (std::size_t v : values) g.emplace_back(v);
  return g;
}

}  // namespace

TEST_CASE("CV score on degenerate graphs") {
  CHECK(cv_score(oracle_test::complete_graph(15), 3, Bandwidth(5)) == 0.0);
  CHECK(cv_score(Adjacency(15), 3, Bandwidth(5)) == 0.0);
}

TEST_CASE("CV score matches a from-scratch rebuild per held-out column") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const Adjacency A = oracle_test::random_graph(10, 0.2 + 0.06 * trial, rng);
    for (Node i = 0; i < 10; ++i) {
      for (std::size_t h = 2; h <= 8; ++h) {
        REQUIRE(cv_score(A, i, Bandwidth(h)) ==
                doctest::Approx(reference::cv_score(A, i, h)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("grid handling") {
  const Adjacency A = oracle_test::complete_graph(20);
  const CvResult single = cv_select(A, 0, grid_of({7}));
  CHECK(single.selected == Bandwidth(7));
  CHECK(single.grid.size() == 1);

  std::mt19937_64 rng(52);
  const Adjacency B = oracle_test::random_graph(40, 0.5, rng);
  const CvResult plain = cv_select(B, 2, grid_of({4, 9, 16}));
  const CvResult dup = cv_select(B, 2, grid_of({16, 4, 9, 9, 4}));
  CHECK(plain.grid == dup.grid);
  CHECK(plain.scores == dup.scores);
  CHECK(plain.selected == dup.selected);

  const CvResult ties = cv_select(A, 0, grid_of({10, 3, 6}));
  CHECK(ties.scores == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(ties.selected == Bandwidth(3));

  for (std::size_t g = 0; g < plain.grid.size(); ++g) {
    CHECK(plain.scores[g] >= 0.0);
    CHECK(plain.scores[g] >= *std::min_element(plain.scores.begin(), plain.scores.end()));
  }
  const auto best = std::min_element(plain.scores.begin(), plain.scores.end());
  CHECK(plain.selected == plain.grid[best - plain.scores.begin()]);

  CHECK_THROWS_AS(cv_select(B, 2, {}), ArgumentError);
  CHECK_THROWS_AS(cv_select(B, 2, grid_of({39})), ArgumentError);
  CHECK_THROWS_AS(cv_select(B, 40, grid_of({5})), ArgumentError);

  std::vector<std::size_t> values;
  for (Bandwidth h : default_grid(500)) values.push_back(h.value());
  CHECK(values == std::vector<std::size_t>{27, 41, 55, 69, 83, 111});
  CHECK(default_grid(10).size() >= 1);
  for (Bandwidth h : default_grid(10)) CHECK_NOTHROW(h.check_for(10));

  CHECK(spread_rows(500, 10) ==
        std::vector<Node>{0, 50, 100, 150, 200, 250, 300, 350, 400, 450});
  CHECK(spread_rows(4, 10) == std::vector<Node>{0, 1, 2, 3});
}

TEST_CASE("global selection takes the lower median") {
  std::mt19937_64 rng(53);
  const Adjacency A = oracle_test::random_graph(50, 0.3, rng);
  const std::vector<Node> rows{0, 7, 19, 33};
  const GlobalCvResult global = cv_select_global(A, rows, grid_of({3, 6, 12, 24}));
  REQUIRE(global.rows.size() == 4);
  std::vector<Bandwidth> picks;
  for (std::size_t r = 0; r < 4; ++r) {
    const CvResult single = cv_select(A, rows[r], grid_of({3, 6, 12, 24}));
    CHECK(global.rows[r].scores == single.scores);
    picks.push_back(single.selected);
  }
  std::sort(picks.begin(), picks.end());
  CHECK(global.selected == picks[1]);
}

TEST_CASE("constant kernel favors the widest bandwidth") {
  const auto grid = grid_of({4, 8, 16, 32});
  std::vector<double> mean_cv(4, 0.0), mean_risk(4, 0.0);
  for (std::uint64_t r = 0; r < 20; ++r) {
    Rng lrng = make_rng(r, Stream::Latent);
    const auto truth = sample_latent(GraphonModel::constant(0.5), 60, lrng);
    Rng erng = make_rng(r, Stream::Edges);
    const Adjacency A = sample_adjacency(truth, erng);
    const CvResult cv = cv_select(A, 0, grid);
    const auto risk = oracle::oracle_prediction_risks(truth, A, 0, grid);
    for (std::size_t g = 0; g < 4; ++g) {
      mean_cv[g] += cv.scores[g] / 20.0;
      mean_risk[g] += risk[g] / 20.0;
    }
  }
  CHECK(std::min_element(mean_cv.begin(), mean_cv.end()) - mean_cv.begin() == 3);
  CHECK(std::min_element(mean_risk.begin(), mean_risk.end()) - mean_risk.begin() == 3);
}

TEST_CASE("oracle prediction risk") {
  const double c = 0.3;
  const std::size_t n = 40;
  oracle_test::RunningStats risk;
  for (std::uint64_t r = 0; r < 400; ++r) {
    Rng lrng = make_rng(r, Stream::Latent);
    const auto truth = sample_latent(GraphonModel::constant(c), n, lrng);
    Rng erng = make_rng(r, Stream::Edges);
    risk.add(oracle::oracle_prediction_risk(truth, sample_adjacency(truth, erng), 0,
                                            Bandwidth(n - 2)));
  }
  CHECK(std::abs(risk.mean - c * (1 - c) / static_cast<double>(n - 2)) <=
        4.0 * risk.std_error());

  Rng lrng = make_rng(9, Stream::Latent);
  const auto ones = sample_latent(GraphonModel::constant(1.0), 20, lrng);
  CHECK(oracle::oracle_prediction_risk(ones, oracle_test::complete_graph(20), 4, Bandwidth(6)) ==
        0.0);
  const auto zeros = sample_latent(GraphonModel::constant(0.0), 20, lrng);
  CHECK(oracle::oracle_prediction_risk(zeros, Adjacency(20), 4, Bandwidth(6)) == 0.0);
}

TEST_CASE("CV score is unbiased for risk plus Bernoulli noise") {
  const std::size_t n = 60;
  Rng lrng = make_rng(54, Stream::Latent);
  const auto truth = sample_latent(GraphonModel::smooth(), n, lrng);
  double noise = 0.0;
  for (Node j = 1; j < n; ++j) noise += truth.P(0, j) * (1.0 - truth.P(0, j));
  noise /= static_cast<double>(n - 1);
  oracle_test::RunningStats gap;
  for (std::uint64_t r = 0; r < 400; ++r) {
    Rng erng = make_rng(54, Stream::Edges, r);
    const Adjacency A = sample_adjacency(truth, erng);
    gap.add(cv_score(A, 0, Bandwidth(12)) -
            oracle::oracle_prediction_risk(truth, A, 0, Bandwidth(12)) - noise);
  }
  CHECK(std::abs(gap.mean) <= 4.0 * gap.std_error());
}

TEST_CASE("held-out predictions read column j only through the frozen neighborhood") {
  std::mt19937_64 rng(55);
  const auto grid = grid_of({3, 7, 15});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 20 + trial % 20;
    const Adjacency A = oracle_test::random_graph(n, 0.3 + 0.4 * (trial % 3) / 3.0, rng);
    const Node i = rng() % n;
    Node j = rng() % n;
    if (j == i) j = (j + 1) % n;
    const Node rows[] = {i};
    const auto before = loo_row_predictions(A, rows, grid);
    std::vector<Neighborhood> frozen;
    for (Bandwidth h : grid) frozen.push_back(loo_neighborhood(loo_twohop(A, full_twohop(A), j), i, h));

    // Overwrite the whole column: neighborhoods stay put and each predictor
    // is the mean of the new column over the old neighborhood.
    Adjacency any = A;
    std::bernoulli_distribution coin(0.5);
    for (Node k = 0; k < n; ++k) {
      if (k != j) any.set_edge(k, j, coin(rng));
    }
    const auto after_any = loo_row_predictions(any, rows, grid);
    const LooTwoHop any_view = loo_twohop(any, full_twohop(any), j);
    for (std::size_t g = 0; g < 3; ++g) {
      REQUIRE(loo_neighborhood(any_view, i, grid[g]).members == frozen[g].members);
      REQUIRE(after_any.front().values[g][j] == loo_predict(any, frozen[g], j));
    }

    // Overwrite the held-out target and every column entry outside the
    // widest neighborhood: predictors are bit-identical.
    Adjacency outside = A;
    std::vector<bool> member(n, false);
    for (Node k : frozen.back().members) member[k] = true;
    for (Node k = 0; k < n; ++k) {
      if (k != j && !member[k]) outside.set_edge(k, j, coin(rng));
    }
    outside.set_edge(i, j, !A(i, j));
    const auto after_outside = loo_row_predictions(outside, rows, grid);
    for (std::size_t g = 0; g < 3; ++g) {
      REQUIRE(before.front().values[g][j] == after_outside.front().values[g][j]);
    }
  }
}

TEST_CASE("selection does not depend on the thread count") {
  std::mt19937_64 rng(56);
  const Adjacency A = oracle_test::random_graph(90, 0.4, rng);
  const auto rows = spread_rows(90, 6);
  omp_set_num_threads(1);
  const GlobalCvResult one = cv_select_global(A, rows, default_grid(90));
  omp_set_num_threads(3);
  const GlobalCvResult three = cv_select_global(A, rows, default_grid(90));
  omp_set_num_threads(omp_get_num_procs());
  CHECK(one.selected == three.selected);
  for (std::size_t r = 0; r < rows.size(); ++r) CHECK(one.rows[r].scores == three.rows[r].scores);
}

TEST_CASE("held-out predictions agree with the full fit") {
  std::mt19937_64 rng(57);
  const Adjacency A = oracle_test::random_graph(30, 0.45, rng);
  const std::vector<Node> rows{0, 11, 29};
  const auto preds = loo_row_predictions(A, rows, grid_of({5, 9}));
  for (std::size_t g = 0; g < 2; ++g) {
    const LooFit fit = fit_loo(A, preds.front().grid[g], false);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (Node j = 0; j < 30; ++j) {
        REQUIRE(preds[r].values[g][j] == doctest::Approx(fit.estimates.tilde(rows[r], j)));
      }
    }
  }
}
