#include "loo/graphon.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace loo {

GraphonModel GraphonModel::smooth() { return {GraphonFamily::Smooth, 0.0, 0.0}; }
GraphonModel GraphonModel::wiggly() { return {GraphonFamily::Wiggly, 0.0, 0.0}; }
GraphonModel GraphonModel::rank_one() { return {GraphonFamily::RankOne, 0.0, 0.0}; }
GraphonModel GraphonModel::spiky() { return {GraphonFamily::Spiky, 0.0, 0.0}; }

GraphonModel GraphonModel::block(double p_in, double p_out) {
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0)) {
    throw DomainError("block probabilities must lie in [0, 1]");
  }
  return {GraphonFamily::Block, p_in, p_out};
}

GraphonModel GraphonModel::constant(double level) {
  if (!(level >= 0.0 && level <= 1.0)) {
    throw DomainError("constant graphon level must lie in [0, 1]");
  }
  return {GraphonFamily::Constant, level, 0.0};
}

GraphonModel GraphonModel::parse(std::string_view name) {
  if (name == "smooth") return smooth();
  if (name == "block") return block();
  if (name == "wiggly" || name == "wiggle") return wiggly();
  if (name == "rank1" || name == "rank-one") return rank_one();
  if (name == "spiky") return spiky();

  constexpr std::string_view prefix = "constant:";
  if (name.starts_with(prefix)) {
    std::string_view tail = name.substr(prefix.size());
    double level = 0.0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), level);
    if (ec != std::errc{} || ptr != tail.data() + tail.size() || tail.empty()) {
      throw ArgumentError("bad constant graphon level: '" + std::string(tail) + "'");
    }
    if (!(level >= 0.0 && level <= 1.0)) {
      throw ArgumentError("constant graphon level must lie in [0, 1]");
    }
    return constant(level);
  }
  throw ArgumentError("unknown graphon '" + std::string(name) +
                      "' (expected smooth|block|wiggly|rank1|spiky|constant:<c>)");
}

std::string GraphonModel::name() const {
  switch (family_) {
    case GraphonFamily::Smooth: return "smooth";
    case GraphonFamily::Block: return "block";
    case GraphonFamily::Wiggly: return "wiggly";
    case GraphonFamily::RankOne: return "rank1";
    case GraphonFamily::Spiky: return "spiky";
    case GraphonFamily::Constant: {
      std::ostringstream out;
      out.precision(17);
      out << "constant:" << a_;
      return out.str();
    }
  }
  return "unknown";
}

double GraphonModel::operator()(double u, double v) const {
  if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
    throw DomainError("graphon arguments must lie in [0, 1]");
  }
  using std::numbers::pi;
  switch (family_) {
    case GraphonFamily::Smooth:
      return 0.5 + 0.3 * (std::sin(pi * u) * std::sin(pi * v));
    case GraphonFamily::Block:
      // u < 0.5 is block one; 0.5 itself belongs to block two.
      return ((u < 0.5) == (v < 0.5)) ? a_ : b_;
    case GraphonFamily::Wiggly:
      return 0.5 + 0.25 * std::sin(4.0 * pi * (u * v));
    case GraphonFamily::RankOne:
      return 0.5 * (u + v);
    case GraphonFamily::Spiky:
      return (std::abs(u - 0.5) < 0.1 && std::abs(v - 0.5) < 0.1) ? 1.0 : 0.2;
    case GraphonFamily::Constant:
      return a_;
  }
  return 0.0;
}

LatentSample latent_from_positions(const GraphonModel& model, std::vector<double> xi) {
  const std::size_t n = xi.size();
  LatentSample sample{model, std::move(xi), SquareMatrix<double>(n)};
  for (Node i = 0; i < n; ++i) {
    for (Node j = i; j < n; ++j) {
      const double p = model(sample.xi[i], sample.xi[j]);
      sample.P(i, j) = p;
      sample.P(j, i) = p;
    }
  }
  return sample;
}

LatentSample sample_latent(const GraphonModel& model, std::size_t n, Rng& rng) {
  if (n < 3) throw DomainError("sample_latent needs n >= 3");
  if (n > kMaxNodes) throw DomainError("network too large");
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> xi(n);
  for (double& x : xi) x = uniform(rng);
  return latent_from_positions(model, std::move(xi));
}

Adjacency::Adjacency(std::size_t n) : entries_(n, 0) {
  if (n > kMaxNodes) throw DomainError("network too large");
}

void Adjacency::set_edge(Node i, Node j, bool present) {
  if (i >= size() || j >= size()) throw ArgumentError("edge endpoint out of range");
  if (i == j) throw ArgumentError("self-loop at node " + std::to_string(i));
  const std::uint8_t value = present ? 1 : 0;
  entries_(i, j) = value;
  entries_(j, i) = value;
}

std::size_t Adjacency::degree(Node i) const {
  std::size_t d = 0;
  for (std::uint8_t a : row(i)) d += a;
  return d;
}

std::size_t Adjacency::edge_count() const {
  std::size_t total = 0;
  for (Node i = 0; i < size(); ++i) total += degree(i);
  return total / 2;
}

Adjacency sample_adjacency(const LatentSample& sample, Rng& rng) {
  const std::size_t n = sample.size();
  Adjacency A(n);
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      std::bernoulli_distribution edge(sample.P(i, j));
      if (edge(rng)) A.set_edge(i, j, true);
    }
  }
  return A;
}

}  // namespace loo
