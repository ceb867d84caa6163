#include "loo/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace loo {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

IntervalReport centered(Edge edge, double estimate, double halfwidth, IntervalMethod method,
                        double alpha, double cushion) {
  IntervalReport r;
  r.i = edge.i;
  r.j = edge.j;
  r.estimate = estimate;
  r.method = method;
  r.halfwidth = halfwidth;
  r.lower = std::max(0.0, estimate - halfwidth);
  r.upper = std::min(1.0, estimate + halfwidth);
  r.alpha = alpha;
  r.bias_cushion = cushion;
  return r;
}

}  // namespace

std::string_view method_tag(IntervalMethod method) noexcept {
  return method == IntervalMethod::EmpiricalBernstein ? "EB" : "Normal";
}

double sample_variance(double p_tilde, Bandwidth h) {
  if (h.value() < 2) throw DomainError("sample variance needs h >= 2");
  if (!(p_tilde >= 0.0 && p_tilde <= 1.0)) throw DomainError("p_tilde must lie in [0, 1]");
  const double hh = static_cast<double>(h.value());
  return hh / (hh - 1.0) * p_tilde * (1.0 - p_tilde);
}

double eb_halfwidth(double s2, Bandwidth h, double alpha) {
  check_alpha(alpha);
  if (h.value() < 2) throw DomainError("empirical Bernstein width needs h >= 2");
  if (!(s2 >= 0.0)) throw DomainError("sample variance must be non-negative");
  const double hh = static_cast<double>(h.value());
  const double log_term = std::log(4.0 / alpha);
  return std::sqrt(2.0 * s2 * log_term / hh) + 7.0 * log_term / (3.0 * (hh - 1.0));
}

IntervalReport eb_interval(Edge edge, double p_tilde, double s2, Bandwidth h, double alpha) {
  return centered(edge, p_tilde, eb_halfwidth(s2, h, alpha), IntervalMethod::EmpiricalBernstein,
                  alpha, 0.0);
}

double plugin_variance(const SquareMatrix<double>& hat, std::span<const std::uint16_t> members,
                       Node j) {
  double sum = 0.0;
  for (std::uint16_t k : members) {
    const double p = hat(k, j);
    sum += p * (1.0 - p);
  }
  const double h = static_cast<double>(members.size());
  return sum / (h * h);
}

double plugin_variance(const EstimateMatrix& estimates, const Neighborhood& nbhd, Node j) {
  if (nbhd.members.empty()) throw ArgumentError("empty neighborhood");
  double sum = 0.0;
  for (Node k : nbhd.members) {
    const double p = estimates.hat(k, j);
    sum += p * (1.0 - p);
  }
  const double h = static_cast<double>(nbhd.members.size());
  return sum / (h * h);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile needs p in (0, 1)");
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double z_critical(double alpha) {
  check_alpha(alpha);
  if (alpha == 0.05) return 1.96;
  return normal_quantile(1.0 - 0.5 * alpha);
}

double bias_cushion(std::size_t n, double c_bias) {
  if (n < 8) throw DomainError("bias cushion needs n >= 8");
  if (!(c_bias >= 0.0)) throw DomainError("c_bias must be non-negative");
  const double nn = static_cast<double>(n);
  return c_bias * std::pow(std::log(nn) / nn, 0.25);
}

double normal_halfwidth(double v, std::size_t n, double alpha, double c_bias) {
  if (!(v >= 0.0)) throw DomainError("variance must be non-negative");
  return z_critical(alpha) * std::sqrt(v) + bias_cushion(n, c_bias);
}

IntervalReport normal_interval(Edge edge, double p_tilde, double v, std::size_t n, double alpha,
                               double c_bias) {
  return centered(edge, p_tilde, normal_halfwidth(v, n, alpha, c_bias), IntervalMethod::Normal,
                  alpha, bias_cushion(n, c_bias));
}

IntervalReport widen(const IntervalReport& report, double radius) {
  if (!(radius >= 0.0)) throw DomainError("widening radius must be non-negative");
  IntervalReport out = report;
  out.lower = std::max(0.0, report.lower - radius);
  out.upper = std::min(1.0, report.upper + radius);
  out.halfwidth = report.halfwidth + radius;
  return out;
}

double coverage(const LatentSample& truth, std::span<const IntervalReport> reports) {
  const std::size_t n = truth.size();
  if (n < 2) throw ArgumentError("coverage needs at least two nodes");
  std::vector<std::uint8_t> seen(n * n, 0);
  std::size_t covered = 0;
  for (const IntervalReport& r : reports) {
    if (r.i >= n || r.j >= n || r.i == r.j) throw ArgumentError("interval for an invalid pair");
    auto& flag = seen[r.i * n + r.j];
    if (flag) throw ArgumentError("duplicate interval for a pair");
    flag = 1;
    covered += r.contains(truth.P(r.i, r.j)) ? 1 : 0;
  }
  const std::size_t pairs = n * (n - 1);
  if (reports.size() != pairs) throw ArgumentError("intervals do not cover every ordered pair");
  return static_cast<double>(covered) / static_cast<double>(pairs);
}

double mean_width(std::span<const IntervalReport> reports) {
  if (reports.empty()) return 0.0;
  double sum = 0.0;
  for (const IntervalReport& r : reports) sum += r.width();
  return sum / static_cast<double>(reports.size());
}

IntervalSet build_intervals(const LooFit& fit, double alpha, double c_bias) {
  const std::size_t n = fit.estimates.size();
  if (fit.neighborhoods.empty()) throw ArgumentError("fit did not keep its neighborhoods");
  check_alpha(alpha);
  IntervalSet out;
  out.eb.resize(n * (n - 1));
  out.normal.resize(n * (n - 1));
  const auto& tilde = fit.estimates.tilde;
  const auto& hat = fit.estimates.hat;
  const auto rows = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < rows; ++si) {
    const auto i = static_cast<Node>(si);
    for (Node j = 0; j < n; ++j) {
      if (j == i) continue;
      const double p = tilde(i, j);
      const std::size_t slot = pair_index(n, i, j);
      out.eb[slot] = eb_interval({i, j}, p, sample_variance(p, fit.h), fit.h, alpha);
      const double v = plugin_variance(hat, fit.neighborhoods.members(i, j), j);
      out.normal[slot] = normal_interval({i, j}, p, v, n, alpha, c_bias);
    }
  }
  return out;
}

double ks_distance_to_normal(std::vector<double> samples) {
  if (samples.empty()) throw ArgumentError("KS distance of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double count = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const double phi = normal_cdf(samples[r]);
    worst = std::max(worst, static_cast<double>(r + 1) / count - phi);
    worst = std::max(worst, phi - static_cast<double>(r) / count);
  }
  return worst;
}

namespace oracle {

double oracle_variance(const LatentSample& truth, const Neighborhood& nbhd, Node j) {
  if (nbhd.members.empty()) throw ArgumentError("empty neighborhood");
  double sum = 0.0;
  for (Node k : nbhd.members) {
    const double p = truth.P(k, j);
    sum += p * (1.0 - p);
  }
  const double h = static_cast<double>(nbhd.members.size());
  return sum / (h * h);
}

ColumnResampler::ColumnResampler(const LatentSample& truth, const Neighborhood& nbhd, Node j) {
  if (nbhd.members.empty()) throw ArgumentError("empty neighborhood");
  probs_.reserve(nbhd.members.size());
  double sum = 0.0;
  for (Node k : nbhd.members) {
    probs_.push_back(truth.P(k, j));
    sum += truth.P(k, j);
  }
  mean_ = sum / static_cast<double>(probs_.size());
}

std::size_t ColumnResampler::draw(Rng& rng) const {
  std::size_t hits = 0;
  for (double p : probs_) {
    std::bernoulli_distribution edge(p);
    hits += edge(rng) ? 1 : 0;
  }
  return hits;
}

std::vector<double> standardized_fluctuations(const LatentSample& truth, const Neighborhood& nbhd,
                                              Node j, std::size_t replicates, Rng& rng) {
  const double v = oracle_variance(truth, nbhd, j);
  if (!(v > 0.0)) throw DomainError("standardization needs positive oracle variance");
  const ColumnResampler resampler(truth, nbhd, j);
  const double h = static_cast<double>(resampler.size());
  const double scale = std::sqrt(v);
  std::vector<double> out;
  out.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    const double u = static_cast<double>(resampler.draw(rng)) / h - resampler.localized_average();
    out.push_back(u / scale);
  }
  return out;
}

}  // namespace oracle

}  // namespace loo
