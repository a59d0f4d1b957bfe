#pragma once

#include <cstdint>
#include <vector>

#include "seldist/geometry.hpp"
#include "seldist/mwu.hpp"
#include "seldist/rng.hpp"

namespace seldist {

struct LearnConfig {
  double delta = 0.1;
  ErrorNorm mode = ErrorNorm::kL1;
  std::uint64_t seed = 0;
  bool exact_depth = false;
  double c3 = 64.0;
  double mu_scale = 8.0;
  bool reduce = true;
  long long reduce_reps = 0;  // 0 = ceil(4 * log2(n + 2))
  int retries = 0;            // extra attempts per guess when a sampled run aborts
};

struct LearnReport {
  DiscreteDistribution distribution;
  double achieved_error = 0.0;
  double alpha_final = 0.0;  // last feasible guess
  long long rounds_used = 0;
  std::size_t support_size = 0;
  std::size_t support_size_pre_reduce = 0;
  // Bookkeeping extremes across every MWU round of every feasibility call.
  double max_w_norm_error = 0.0;
  double max_abs_slack = 0.0;
};

/// Error-guess ladder: delta/2, (1+delta/2) delta/2, ... capped so the last
/// element is exactly 1.
std::vector<double> guess_list(double delta);

/// Binary search over guess_list with is_feasible; returns the distribution
/// of the last feasible guess. With reduce set, the search runs at delta/2
/// internally and the result goes through reduce_size.
LearnReport learn(const Workload& z, const LearnConfig& cfg);

/// Support reduction: reps independent samples of ceil(16/delta^2) points
/// drawn from dist proportionally to atom weight, each resampled
/// distribution carrying the original total mass; returns the one with the
/// smallest empirical error. reps <= 0 picks ceil(4 * log2(n + 2)).
DiscreteDistribution reduce_size(const DiscreteDistribution& dist, double delta,
                                 const Workload& z, ErrorNorm mode, long long reps,
                                 RngStream rng);

/// Completes the total mass to 1 with one atom outside every range; all
/// selectivities over z stay unchanged.
DiscreteDistribution add_sink(const DiscreteDistribution& dist, const Workload& z);

}  // namespace seldist
