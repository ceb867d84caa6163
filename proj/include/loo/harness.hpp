#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loo/estimator.hpp"
#include "loo/graphon.hpp"
#include "loo/inference.hpp"
#include "loo/neighborhood.hpp"
#include "loo/rng.hpp"
#include "loo/tuning.hpp"

namespace loo {

/// How h is chosen: a fixed value, the default sqrt(n log n) rule,
/// cross-validation, or the undersmoothing preset sqrt(n)/log n.
struct BandwidthRule {
  enum class Kind { Fixed, Auto, CrossValidated, Undersmooth };

  Kind kind = Kind::Auto;
  std::size_t value = 0;  // Fixed only

  /// Accepts a positive integer, `auto`, `cv` or `undersmooth`.
  static BandwidthRule parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const BandwidthRule&) const = default;
};

struct SimConfig {
  GraphonModel graphon = GraphonModel::smooth();
  std::size_t n = 500;
  BandwidthRule h;
  double alpha = kDefaultAlpha;
  double c_bias = kDefaultBiasConstant;
  std::uint64_t seed = kDefaultSeed;
  std::size_t replicates = 1;
  Node metrics_row = 0;
  std::size_t cv_rows = 10;  // rows tuned when h = cv

  /// Throws ArgumentError naming the first violated constraint.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

struct SimReport {
  SimConfig config;
  std::size_t h = 0;  // resolved bandwidth
  double mse_loo = 0.0;
  double mse_classical = 0.0;
  double coverage_eb = 0.0;
  double width_eb = 0.0;
  double coverage_normal = 0.0;
  double width_normal = 0.0;
  // Diagnostics beyond the headline table.
  double coverage_eb_local = 0.0;    // EB scored against the localized average
  double bias_radius = 0.0;          // max_{i != j} |B_ij|
  double coverage_eb_widened = 0.0;  // EB widened by bias_radius, scored against P_ij
  double runtime_seconds = 0.0;
};

/// True when every field except runtime_seconds matches exactly.
bool same_metrics(const SimReport& a, const SimReport& b);

/// One row of the per-edge CSV.
struct EdgeRecord {
  Node i = 0;
  Node j = 0;
  double p_true = 0.0;
  double p_tilde = 0.0;
  double p_hat = 0.0;
  double eb_lo = 0.0;
  double eb_hi = 0.0;
  double n_lo = 0.0;
  double n_hi = 0.0;
};

/// Everything one simulation produced, for callers that write artifacts.
struct SimulationRun {
  SimReport report;
  LatentSample truth;
  Adjacency adjacency;
  LooFit fit;
  IntervalSet intervals;
  std::optional<GlobalCvResult> tuning;

  std::vector<EdgeRecord> edge_records() const;
};

/// (1/n) sum_{j != i} (P^_ij - P_ij)^2. The divisor is n; the diagonal
/// term is zero because both diagonals are stored as zero.
double mse_row(const EstimateMatrix& estimate, const LatentSample& truth, Node i);

/// Resolves a rule against observed data. `tuning` receives the CV result
/// when the rule is cross-validation.
Bandwidth resolve_bandwidth(const BandwidthRule& rule, const Adjacency& A, std::size_t cv_rows,
                            std::optional<GlobalCvResult>* tuning = nullptr);

/// Sample, fit both smoothers, build both interval families, score them.
SimulationRun simulate(const SimConfig& cfg);
SimReport run_simulation(const SimConfig& cfg);

struct MetricSummary {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(replicates); zero for one replicate
};

struct ReplicatedReport {
  SimConfig config;
  std::vector<std::uint64_t> seeds;
  std::vector<SimReport> replicates;
  MetricSummary mse_loo;
  MetricSummary mse_classical;
  MetricSummary coverage_eb;
  MetricSummary width_eb;
  MetricSummary coverage_normal;
  MetricSummary width_normal;
  MetricSummary coverage_eb_local;
  MetricSummary coverage_eb_widened;
  double runtime_seconds = 0.0;
};

/// Seed of replicate r: the master seed for r = 0, a derived substream after.
std::vector<std::uint64_t> replicate_seeds(std::uint64_t master, std::size_t replicates);

ReplicatedReport run_replicated(const SimConfig& cfg);
/// Runs one replicate per entry of `seeds`, in order.
ReplicatedReport run_replicated(const SimConfig& cfg, std::span<const std::uint64_t> seeds);

MetricSummary summarize(std::span<const double> values);

}  // namespace loo
