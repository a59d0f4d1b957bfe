#pragma once

#include <cstdint>
#include <utility>

#include "seldist/geometry.hpp"
#include "seldist/rng.hpp"

namespace seldist {

/// The hidden generator behind a consistent workload; empirical error 0 by
/// construction for every norm.
struct GroundTruth {
  DiscreteDistribution distribution;
};

/// n random boxes in [0,1]^d labeled with exact selectivities of a hidden
/// k-atom distribution. Fixed seeds reproduce fixed workloads.
std::pair<Workload, GroundTruth> gen_consistent(std::size_t n, int d, std::size_t k,
                                                RngStream rng);

/// The box [0,1]^d with selectivity 1 plus m zero-selectivity slabs along
/// axis 0 whose union covers it. Every distribution has error above
/// 1/(2 n^2), n = m+1, which makes the instance a deterministic
/// infeasibility fixture.
Workload gen_cover_gadget(int d, std::size_t m);

/// Minimum empirical error over all weight assignments on the candidate-grid
/// points with weights in multiples of 1/grid_weights and total at most 1.
/// An independent reference for alpha* on tiny instances: the result
/// overshoots alpha* by at most n/grid_weights for the L1 norm. Requires
/// n <= 5, d <= 2 and at most 30 candidate points.
double exhaustive_opt(const Workload& z, ErrorNorm p, long long grid_weights);

}  // namespace seldist
