#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "loo/common.hpp"
#include "loo/estimator.hpp"
#include "loo/graphon.hpp"
#include "loo/neighborhood.hpp"
#include "loo/rng.hpp"

namespace loo {

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr double kDefaultBiasConstant = 0.1;

struct Edge {
  Node i = 0;
  Node j = 0;
};

enum class IntervalMethod { EmpiricalBernstein, Normal };

/// "EB" or "Normal".
std::string_view method_tag(IntervalMethod method) noexcept;

/// Interval for the one-sided prediction P~_{ij}, clipped to [0, 1].
struct IntervalReport {
  Node i = 0;
  Node j = 0;
  double estimate = 0.0;
  IntervalMethod method = IntervalMethod::EmpiricalBernstein;
  double lower = 0.0;
  double upper = 1.0;
  double halfwidth = 0.0;
  double alpha = kDefaultAlpha;
  double bias_cushion = 0.0;  // zero for EB

  bool contains(double value) const noexcept { return lower <= value && value <= upper; }
  double width() const noexcept { return upper - lower; }
};

/// Unbiased neighborhood sample variance of binary observations,
/// (h / (h - 1)) p (1 - p). Throws DomainError for h < 2.
double sample_variance(double p_tilde, Bandwidth h);

/// sqrt(2 s2 log(4/alpha) / h) + 7 log(4/alpha) / (3 (h - 1)).
double eb_halfwidth(double s2, Bandwidth h, double alpha);

IntervalReport eb_interval(Edge edge, double p_tilde, double s2, Bandwidth h, double alpha);

/// (1/h^2) sum over members of P^_kj (1 - P^_kj), with h the member count.
double plugin_variance(const SquareMatrix<double>& hat, std::span<const std::uint16_t> members,
                       Node j);
double plugin_variance(const EstimateMatrix& estimates, const Neighborhood& nbhd, Node j);

double normal_cdf(double x) noexcept;

/// Inverse standard normal CDF. Acklam's rational approximation followed by
/// one Halley step against erfc; absolute error well below 1e-8.
double normal_quantile(double p);

/// z_{1 - alpha/2}; exactly 1.96 at alpha = 0.05.
double z_critical(double alpha);

/// c_bias (ln n / n)^{1/4}.
double bias_cushion(std::size_t n, double c_bias);

/// z_{1 - alpha/2} sqrt(v) + c_bias (ln n / n)^{1/4}.
double normal_halfwidth(double v, std::size_t n, double alpha, double c_bias);

IntervalReport normal_interval(Edge edge, double p_tilde, double v, std::size_t n, double alpha,
                               double c_bias);

/// Minkowski sum with [-radius, radius], re-clipped to [0, 1].
IntervalReport widen(const IntervalReport& report, double radius);

/// Fraction of ordered pairs i != j with P_ij inside its interval.
/// Throws ArgumentError unless every ordered pair appears exactly once.
double coverage(const LatentSample& truth, std::span<const IntervalReport> reports);

/// Mean of upper - lower.
double mean_width(std::span<const IntervalReport> reports);

/// Both interval families for every ordered pair, row-major with the
/// diagonal skipped: index i (n - 1) + j - [j > i].
struct IntervalSet {
  std::vector<IntervalReport> eb;
  std::vector<IntervalReport> normal;
};

/// Requires a fit that kept its neighborhoods.
IntervalSet build_intervals(const LooFit& fit, double alpha, double c_bias);

inline std::size_t pair_index(std::size_t n, Node i, Node j) noexcept {
  return i * (n - 1) + j - (j > i ? 1 : 0);
}

/// sup_x |F_N(x) - Phi(x)| for the empirical CDF of `samples`.
double ks_distance_to_normal(std::vector<double> samples);

namespace oracle {

/// V_ij = (1/h^2) sum over members of P_kj (1 - P_kj).
double oracle_variance(const LatentSample& truth, const Neighborhood& nbhd, Node j);

/// Redraws A_kj ~ Bernoulli(P_kj) for the members of a frozen neighborhood.
class ColumnResampler {
 public:
  ColumnResampler(const LatentSample& truth, const Neighborhood& nbhd, Node j);

  /// Number of members adjacent to j in a fresh draw.
  std::size_t draw(Rng& rng) const;

  std::size_t size() const noexcept { return probs_.size(); }
  /// (1/h) sum P_kj.
  double localized_average() const noexcept { return mean_; }

 private:
  std::vector<double> probs_;
  double mean_ = 0.0;
};

/// Replicates of U / sqrt(V) with column j redrawn and the neighborhood
/// frozen. Throws DomainError when V = 0.
std::vector<double> standardized_fluctuations(const LatentSample& truth, const Neighborhood& nbhd,
                                              Node j, std::size_t replicates, Rng& rng);

}  // namespace oracle

}  // namespace loo
