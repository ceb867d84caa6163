#include "doctest.h"
#include "loo/inference.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace loo;

namespace {

Neighborhood make_nbhd(Node i, Node j, std::vector<Node> members) {
  Neighborhood nb;
  nb.anchor = i;
  nb.excluded = j;
  nb.target = members.size();
  nb.members = std::move(members);
  return nb;
}

IntervalReport fixed(Node i, Node j, double lower, double upper) {
  IntervalReport r;
  r.i = i;
  r.j = j;
  r.lower = lower;
  r.upper = upper;
  r.estimate = (lower + upper) / 2.0;
  return r;
}

}  // namespace

TEST_CASE("sample variance closed form") {
  CHECK(sample_variance(0.0, Bandwidth(10)) == 0.0);
  CHECK(sample_variance(1.0, Bandwidth(10)) == 0.0);
  CHECK(sample_variance(0.5, Bandwidth(2)) == 0.5);
  CHECK_THROWS_AS(sample_variance(0.5, Bandwidth(1)), DomainError);
  CHECK_THROWS_AS(sample_variance(1.5, Bandwidth(4)), DomainError);

  double worst = 0.0;
  for (std::size_t h = 2; h <= 12; ++h) {
    for (std::uint32_t bits = 0; bits < (1u << h); ++bits) {
      std::vector<int> x(h);
      int ones = 0;
      for (std::size_t k = 0; k < h; ++k) ones += x[k] = (bits >> k) & 1u;
      const double p = static_cast<double>(ones) / static_cast<double>(h);
      const double closed = sample_variance(p, Bandwidth(h));
      worst = std::max(worst, std::abs(closed - oracle_test::pairwise_sample_variance(x)));
      REQUIRE(closed <= static_cast<double>(h) / (4.0 * static_cast<double>(h - 1)) + 1e-15);
    }
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("empirical Bernstein half-width") {
  CHECK(eb_halfwidth(0.0, Bandwidth(100), 0.05) == doctest::Approx(0.10328).epsilon(1e-4));
  CHECK(eb_halfwidth(0.25, Bandwidth(100), 0.05) == doctest::Approx(0.25134).epsilon(1e-4));
  CHECK(eb_halfwidth(0.0, Bandwidth(100), 0.05) ==
        doctest::Approx(7.0 * std::log(80.0) / 297.0).epsilon(1e-14));
  double previous = 0.0;
  for (double alpha = 0.5; alpha >= 1e-4; alpha *= 0.8) {
    const double w = eb_halfwidth(0.2, Bandwidth(40), alpha);
    CHECK(w > previous);
    previous = w;
  }
  CHECK_THROWS_AS(eb_halfwidth(0.1, Bandwidth(40), 0.0), DomainError);
  CHECK_THROWS_AS(eb_halfwidth(0.1, Bandwidth(40), 1.0), DomainError);
  CHECK_THROWS_AS(eb_halfwidth(-0.1, Bandwidth(40), 0.05), DomainError);
}

TEST_CASE("intervals are clipped to the unit interval") {
  const IntervalReport zero = eb_interval({0, 1}, 0.0, 0.0, Bandwidth(10), 0.05);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == doctest::Approx(std::min(zero.halfwidth, 1.0)));
  CHECK(zero.method == IntervalMethod::EmpiricalBernstein);
  CHECK(method_tag(zero.method) == "EB");

  const IntervalReport tiny = eb_interval({0, 1}, 0.0, 0.0, Bandwidth(3), 0.05);
  CHECK(tiny.upper == 1.0);

  IntervalReport point = fixed(0, 1, 0.5, 0.5);
  const IntervalReport w = widen(point, 0.2);
  CHECK(w.lower == doctest::Approx(0.3));
  CHECK(w.upper == doctest::Approx(0.7));
  CHECK(widen(fixed(0, 1, 0.05, 0.9), 0.2).lower == 0.0);
  CHECK(widen(fixed(0, 1, 0.05, 0.9), 0.2).upper == 1.0);

  const double c = 0.2 / std::pow(std::log(500.0) / 500.0, 0.25);
  const IntervalReport mid = normal_interval({2, 3}, 0.5, 0.0, 500, 0.05, c);
  CHECK(mid.lower == doctest::Approx(0.3));
  CHECK(mid.upper == doctest::Approx(0.7));
  CHECK(method_tag(mid.method) == "Normal");
}

TEST_CASE("plug-in and oracle variances") {
  SquareMatrix<double> half(10, 0.5);
  const std::vector<std::uint16_t> members{1, 2, 3, 4};
  CHECK(plugin_variance(half, members, 9) == doctest::Approx(1.0 / 16.0));
  SquareMatrix<double> binary(10, 0.0);
  for (Node k = 0; k < 10; ++k) binary(k, 9) = k % 2;
  CHECK(plugin_variance(binary, members, 9) == 0.0);

  for (std::size_t h : {5u, 20u, 83u}) {
    std::vector<double> xi(h + 2, 0.5);
    const auto flat = latent_from_positions(GraphonModel::constant(0.5), xi);
    std::vector<Node> ids;
    for (Node k = 1; k <= h; ++k) ids.push_back(k);
    const Neighborhood nb = make_nbhd(0, h + 1, ids);
    CHECK(oracle::oracle_variance(flat, nb, h + 1) ==
          doctest::Approx(1.0 / (4.0 * static_cast<double>(h))));
    const auto low = latent_from_positions(GraphonModel::constant(0.3), xi);
    CHECK(oracle::oracle_variance(low, nb, h + 1) ==
          doctest::Approx(0.21 / static_cast<double>(h)));
  }
  {
    std::vector<double> xi(85, 0.1);
    std::vector<Node> ids;
    for (Node k = 1; k <= 83; ++k) ids.push_back(k);
    const auto low = latent_from_positions(GraphonModel::constant(0.3), xi);
    CHECK(oracle::oracle_variance(low, make_nbhd(0, 84, ids), 84) ==
          doctest::Approx(0.0025301).epsilon(1e-4));
  }

  // Bounds for a kernel bounded in [eta, 1 - eta] and the plug-in
  // Lipschitz bound over the realized neighborhood.
  Rng rng = make_rng(41, Stream::Trial);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double eta = 0.3;
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 30;
    const auto truth = sample_latent(GraphonModel::block(), n, rng);
    const Adjacency A = sample_adjacency(truth, rng);
    const Bandwidth h(2 + rng() % 20);
    const LooFit fit = fit_loo(A, h);
    const Node j = rng() % n;
    Node i = rng() % n;
    if (i == j) i = (i + 1) % n;
    const Neighborhood nb = fit.neighborhoods.at(i, j);
    const double hv = static_cast<double>(h.value());
    const double v = oracle::oracle_variance(truth, nb, j);
    REQUIRE(v >= eta * (1.0 - eta) / hv - 1e-15);
    REQUIRE(v <= 1.0 / (4.0 * hv) + 1e-15);
    const double vhat = plugin_variance(fit.estimates, nb, j);
    REQUIRE(vhat >= 0.0);
    REQUIRE(vhat <= 1.0 / (4.0 * hv) + 1e-15);
    double max_err = 0.0;
    for (Node k : nb.members) {
      max_err = std::max(max_err, std::abs(fit.estimates.hat(k, j) - truth.P(k, j)));
    }
    REQUIRE(std::abs(vhat - v) <= max_err / hv + 1e-15);
    REQUIRE(plugin_variance(fit.estimates.hat, fit.neighborhoods.members(i, j), j) == vhat);
  }
}

TEST_CASE("normal half-width") {
  CHECK(z_critical(0.05) == 1.96);
  CHECK(normal_halfwidth(0.0, 500, 0.05, 0.1) == doctest::Approx(0.033386).epsilon(1e-4));
  CHECK(bias_cushion(500, 0.1) == doctest::Approx(0.1 * std::pow(std::log(500.0) / 500.0, 0.25)));
  CHECK(normal_halfwidth(1.0 / (4.0 * 83.0), 500, 0.05, 0.0) ==
        doctest::Approx(0.10757).epsilon(1e-4));
  CHECK(normal_halfwidth(1.0 / (4.0 * 83.0), 500, 0.05, 0.0) ==
        doctest::Approx(1.96 * std::sqrt(1.0 / 332.0)).epsilon(1e-14));

  CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) <= 1e-8);
  CHECK(std::abs(normal_quantile(0.995) - 2.5758293035489004) <= 1e-8);
  CHECK(std::abs(normal_quantile(0.9) - 1.2815515655446004) <= 1e-8);
  CHECK(std::abs(normal_quantile(1e-6) + 4.753424308822899) <= 1e-8);
  CHECK(std::abs(z_critical(0.1) - 1.6448536269514722) <= 1e-8);
  for (double p = 0.001; p < 1.0; p += 0.0137) {
    REQUIRE(std::abs(normal_cdf(normal_quantile(p)) - p) <= 1e-12);
  }
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(bias_cushion(500, -0.1), DomainError);
  CHECK_THROWS_AS(normal_halfwidth(-1.0, 500, 0.05, 0.1), DomainError);
}

TEST_CASE("coverage scoring") {
  const auto truth = latent_from_positions(GraphonModel::rank_one(), {0.0, 0.4, 0.8});
  // P01 = 0.2, P02 = 0.4, P12 = 0.6.
  std::vector<IntervalReport> all;
  for (Node i = 0; i < 3; ++i) {
    for (Node j = 0; j < 3; ++j) {
      if (i != j) all.push_back(fixed(i, j, 0.0, 1.0));
    }
  }
  CHECK(coverage(truth, all) == 1.0);

  std::vector<IntervalReport> none = all;
  for (auto& r : none) r.lower = r.upper = 0.95;
  CHECK(coverage(truth, none) == 0.0);

  std::vector<IntervalReport> some = {fixed(0, 1, 0.1, 0.3), fixed(1, 0, 0.3, 0.5),
                                      fixed(0, 2, 0.35, 0.45), fixed(2, 0, 0.0, 0.1),
                                      fixed(1, 2, 0.55, 0.65), fixed(2, 1, 0.5, 0.7)};
  CHECK(coverage(truth, some) == doctest::Approx(2.0 / 3.0));
  CHECK(mean_width(some) == doctest::Approx((0.2 + 0.2 + 0.1 + 0.1 + 0.1 + 0.2) / 6.0));

  std::vector<IntervalReport> missing(some.begin(), some.end() - 1);
  CHECK_THROWS_AS(coverage(truth, missing), ArgumentError);
  std::vector<IntervalReport> duplicate = some;
  duplicate.back() = fixed(1, 2, 0.0, 1.0);
  CHECK_THROWS_AS(coverage(truth, duplicate), ArgumentError);
  std::vector<IntervalReport> diagonal = some;
  diagonal.back() = fixed(1, 1, 0.0, 1.0);
  CHECK_THROWS_AS(coverage(truth, diagonal), ArgumentError);
}

TEST_CASE("interval set layout and invariants") {
  Rng rng = make_rng(42, Stream::Trial);
  const auto truth = sample_latent(GraphonModel::wiggly(), 60, rng);
  const Adjacency A = sample_adjacency(truth, rng);
  const LooFit fit = fit_loo(A, Bandwidth(15));
  const IntervalSet set = build_intervals(fit, 0.05, 0.1);
  REQUIRE(set.eb.size() == 60 * 59);
  REQUIRE(set.normal.size() == 60 * 59);
  for (Node i = 0; i < 60; ++i) {
    for (Node j = 0; j < 60; ++j) {
      if (i == j) continue;
      const std::size_t s = pair_index(60, i, j);
      for (const IntervalReport* r : {&set.eb[s], &set.normal[s]}) {
        REQUIRE(r->i == i);
        REQUIRE(r->j == j);
        REQUIRE(r->estimate == fit.estimates.tilde(i, j));
        REQUIRE(0.0 <= r->lower);
        REQUIRE(r->lower <= r->estimate);
        REQUIRE(r->estimate <= r->upper);
        REQUIRE(r->upper <= 1.0);
        REQUIRE(r->width() <= 2.0 * r->halfwidth + 1e-15);
      }
      const double p = fit.estimates.tilde(i, j);
      REQUIRE(set.eb[s].halfwidth ==
              eb_halfwidth(sample_variance(p, Bandwidth(15)), Bandwidth(15), 0.05));
      const double v = plugin_variance(fit.estimates, fit.neighborhoods.at(i, j), j);
      REQUIRE(set.normal[s].halfwidth == doctest::Approx(normal_halfwidth(v, 60, 0.05, 0.1)));
    }
  }
  LooFit lean = fit_loo(A, Bandwidth(15), false);
  CHECK_THROWS_AS(build_intervals(lean, 0.05, 0.1), ArgumentError);
}

TEST_CASE("EB interval covers the localized average") {
  Rng rng = make_rng(43, Stream::Trial);
  const auto truth = sample_latent(GraphonModel::smooth(), 200, rng);
  const Adjacency A = sample_adjacency(truth, rng);
  const Bandwidth h(50);
  const Neighborhood nb = loo_neighborhood(loo_twohop(A, full_twohop(A), 7), 3, h);
  const oracle::ColumnResampler column(truth, nb, 7);
  Rng draws = make_rng(44, Stream::Resample);
  int covered = 0;
  for (int r = 0; r < 10000; ++r) {
    const double p = static_cast<double>(column.draw(draws)) / 50.0;
    const IntervalReport iv = eb_interval({3, 7}, p, sample_variance(p, h), h, 0.05);
    covered += iv.contains(column.localized_average());
  }
  CHECK(covered >= 9500);
}

TEST_CASE("standardized fluctuations for a constant kernel") {
  std::vector<double> xi(202, 0.5);
  const auto truth = latent_from_positions(GraphonModel::constant(0.5), xi);
  std::vector<Node> ids;
  for (Node k = 1; k <= 200; ++k) ids.push_back(k);
  const Neighborhood nb = make_nbhd(0, 201, ids);
  Rng rng = make_rng(45, Stream::Resample);
  const auto z = oracle::standardized_fluctuations(truth, nb, 201, 10000, rng);
  REQUIRE(z.size() == 10000);
  CHECK(ks_distance_to_normal(z) <= 0.05);

  oracle_test::RunningStats stats;
  for (double x : z) stats.add(x);
  CHECK(std::abs(stats.mean) <= 4.0 * stats.std_error());
  double m4 = 0.0;
  for (double x : z) m4 += std::pow(x - stats.mean, 4);
  m4 /= static_cast<double>(z.size());
  const double var_se = std::sqrt((m4 - stats.variance() * stats.variance()) / z.size());
  CHECK(std::abs(stats.variance() - 1.0) <= 4.0 * var_se);

  const auto degenerate = latent_from_positions(GraphonModel::constant(1.0), xi);
  CHECK_THROWS_AS(oracle::standardized_fluctuations(degenerate, nb, 201, 10, rng), DomainError);
}

TEST_CASE("KS distance") {
  CHECK(ks_distance_to_normal({0.0}) == doctest::Approx(0.5));
  CHECK(ks_distance_to_normal({0.0, 0.0}) == doctest::Approx(0.5));
  CHECK(ks_distance_to_normal({-10.0, 10.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_distance_to_normal({}), ArgumentError);
  CHECK(pair_index(5, 0, 1) == 0);
  CHECK(pair_index(5, 1, 0) == 4);
  CHECK(pair_index(5, 4, 3) == 19);
}
