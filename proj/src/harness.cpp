#include "loo/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

namespace loo {

BandwidthRule BandwidthRule::parse(std::string_view text) {
  if (text == "auto") return {Kind::Auto, 0};
  if (text == "cv") return {Kind::CrossValidated, 0};
  if (text == "undersmooth") return {Kind::Undersmooth, 0};
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw ArgumentError("bandwidth must be a positive integer, auto, cv or undersmooth; got '" +
                        std::string(text) + "'");
  }
  return {Kind::Fixed, value};
}

std::string BandwidthRule::to_string() const {
  switch (kind) {
    case Kind::Fixed: return std::to_string(value);
    case Kind::Auto: return "auto";
    case Kind::CrossValidated: return "cv";
    case Kind::Undersmooth: return "undersmooth";
  }
  return "auto";
}

void SimConfig::validate() const {
  if (n < 8) throw ArgumentError("n must be at least 8");
  if (n > kMaxNodes) throw ArgumentError("n exceeds the supported maximum");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (!(c_bias >= 0.0) || !std::isfinite(c_bias)) throw ArgumentError("c_bias must be >= 0");
  if (replicates == 0) throw ArgumentError("replicates must be at least 1");
  if (metrics_row >= n) throw ArgumentError("metrics_row must be below n");
  if (cv_rows == 0) throw ArgumentError("cv_rows must be at least 1");
  if (h.kind == BandwidthRule::Kind::Fixed) Bandwidth(h.value).check_for(n);
}

bool same_metrics(const SimReport& a, const SimReport& b) {
  return a.config == b.config && a.h == b.h && a.mse_loo == b.mse_loo &&
         a.mse_classical == b.mse_classical && a.coverage_eb == b.coverage_eb &&
         a.width_eb == b.width_eb && a.coverage_normal == b.coverage_normal &&
         a.width_normal == b.width_normal && a.coverage_eb_local == b.coverage_eb_local &&
         a.bias_radius == b.bias_radius && a.coverage_eb_widened == b.coverage_eb_widened;
}

double mse_row(const EstimateMatrix& estimate, const LatentSample& truth, Node i) {
  const std::size_t n = truth.size();
  if (i >= n) throw ArgumentError("metrics row out of range");
  if (estimate.size() != n) throw ArgumentError("estimate and truth sizes differ");
  double sum = 0.0;
  for (Node j = 0; j < n; ++j) {
    if (j == i) continue;
    const double err = estimate.hat(i, j) - truth.P(i, j);
    sum += err * err;
  }
  return sum / static_cast<double>(n);
}

Bandwidth resolve_bandwidth(const BandwidthRule& rule, const Adjacency& A, std::size_t cv_rows,
                            std::optional<GlobalCvResult>* tuning) {
  const std::size_t n = A.size();
  switch (rule.kind) {
    case BandwidthRule::Kind::Fixed: {
      Bandwidth h(rule.value);
      h.check_for(n);
      return h;
    }
    case BandwidthRule::Kind::Auto: return default_bandwidth(n);
    case BandwidthRule::Kind::Undersmooth: return undersmooth_bandwidth(n);
    case BandwidthRule::Kind::CrossValidated: {
      const auto rows = spread_rows(n, cv_rows);
      GlobalCvResult result = cv_select_global(A, rows, default_grid(n));
      const Bandwidth h = result.selected;
      if (tuning) *tuning = std::move(result);
      return h;
    }
  }
  return default_bandwidth(n);
}

std::vector<EdgeRecord> SimulationRun::edge_records() const {
  const std::size_t n = truth.size();
  std::vector<EdgeRecord> rows;
  rows.reserve(n * (n - 1));
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::size_t slot = pair_index(n, i, j);
      rows.push_back({i, j, truth.P(i, j), fit.estimates.tilde(i, j), fit.estimates.hat(i, j),
                      intervals.eb[slot].lower, intervals.eb[slot].upper,
                      intervals.normal[slot].lower, intervals.normal[slot].upper});
    }
  }
  return rows;
}

SimulationRun simulate(const SimConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  Rng latent_rng = make_rng(cfg.seed, Stream::Latent);
  LatentSample truth = sample_latent(cfg.graphon, cfg.n, latent_rng);
  Rng edge_rng = make_rng(cfg.seed, Stream::Edges);
  Adjacency A = sample_adjacency(truth, edge_rng);

  std::optional<GlobalCvResult> tuning;
  const Bandwidth h = resolve_bandwidth(cfg.h, A, cfg.cv_rows, &tuning);

  LooFit fit = fit_loo(A, h, /*keep_neighborhoods=*/true);
  const EstimateMatrix classical = fit_zlz(A, h);
  IntervalSet intervals = build_intervals(fit, cfg.alpha, cfg.c_bias);

  SimReport report;
  report.config = cfg;
  report.h = h.value();
  report.mse_loo = mse_row(fit.estimates, truth, cfg.metrics_row);
  report.mse_classical = mse_row(classical, truth, cfg.metrics_row);
  report.coverage_eb = coverage(truth, intervals.eb);
  report.width_eb = mean_width(intervals.eb);
  report.coverage_normal = coverage(truth, intervals.normal);
  report.width_normal = mean_width(intervals.normal);

  const std::size_t n = cfg.n;
  std::size_t local_hits = 0;
  double radius = 0.0;
  for (const IntervalReport& r : intervals.eb) {
    const double local = oracle::localized_average(truth, fit.neighborhoods.members(r.i, r.j), r.j);
    local_hits += r.contains(local) ? 1 : 0;
    radius = std::max(radius, std::abs(local - truth.P(r.i, r.j)));
  }
  std::size_t widened_hits = 0;
  for (const IntervalReport& r : intervals.eb) {
    widened_hits += widen(r, radius).contains(truth.P(r.i, r.j)) ? 1 : 0;
  }
  const double pairs = static_cast<double>(n * (n - 1));
  report.coverage_eb_local = static_cast<double>(local_hits) / pairs;
  report.bias_radius = radius;
  report.coverage_eb_widened = static_cast<double>(widened_hits) / pairs;

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {report,         std::move(truth),     std::move(A), std::move(fit),
          std::move(intervals), std::move(tuning)};
}

SimReport run_simulation(const SimConfig& cfg) { return simulate(cfg).report; }

MetricSummary summarize(std::span<const double> values) {
  MetricSummary out;
  if (values.empty()) return out;
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (count - 1.0) / count);
  }
  return out;
}

std::vector<std::uint64_t> replicate_seeds(std::uint64_t master, std::size_t replicates) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    seeds.push_back(r == 0 ? master : derive_seed(master, Stream::Replicate, r));
  }
  return seeds;
}

ReplicatedReport run_replicated(const SimConfig& cfg) {
  cfg.validate();
  const auto seeds = replicate_seeds(cfg.seed, cfg.replicates);
  return run_replicated(cfg, seeds);
}

ReplicatedReport run_replicated(const SimConfig& cfg, std::span<const std::uint64_t> seeds) {
  cfg.validate();
  if (seeds.empty()) throw ArgumentError("no replicate seeds");
  ReplicatedReport out;
  out.config = cfg;
  out.seeds.assign(seeds.begin(), seeds.end());
  for (std::uint64_t seed : seeds) {
    SimConfig single = cfg;
    single.seed = seed;
    single.replicates = 1;
    out.replicates.push_back(run_simulation(single));
    out.runtime_seconds += out.replicates.back().runtime_seconds;
  }

  auto column = [&](double SimReport::*field) {
    std::vector<double> values;
    values.reserve(out.replicates.size());
    for (const SimReport& r : out.replicates) values.push_back(r.*field);
    return summarize(values);
  };
  out.mse_loo = column(&SimReport::mse_loo);
  out.mse_classical = column(&SimReport::mse_classical);
  out.coverage_eb = column(&SimReport::coverage_eb);
  out.width_eb = column(&SimReport::width_eb);
  out.coverage_normal = column(&SimReport::coverage_normal);
  out.width_normal = column(&SimReport::width_normal);
  out.coverage_eb_local = column(&SimReport::coverage_eb_local);
  out.coverage_eb_widened = column(&SimReport::coverage_eb_widened);
  return out;
}

}  // namespace loo
