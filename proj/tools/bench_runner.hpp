#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

namespace loo::bench {

inline constexpr double kPipelineBudgetSeconds = 60.0;
inline constexpr double kRequiredCorrectionSpeedup = 10.0;

struct SizeTiming {
  std::size_t n = 0;
  std::size_t h = 0;
  double full_twohop_s = 0.0;
  double correction_per_j_s = 0.0;  // loo_twohop, averaged over every j
  double naive_per_j_s = 0.0;       // delete-and-square, averaged over sampled j
  double correction_speedup = 0.0;
  double loo_pass_per_j_s = 0.0;    // correction + distances + all neighborhoods
  double pipeline_s = 0.0;          // fit_loo + fit_zlz + intervals
  double budget_s = kPipelineBudgetSeconds;
  bool within_budget = false;
  bool correction_path_ok = false;
};

SizeTiming time_size(std::size_t n, std::uint64_t seed, std::size_t naive_samples);

nlohmann::json to_json(const SizeTiming& t);

}  // namespace loo::bench
