#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seldist/depth.hpp"
#include "seldist/geometry.hpp"
#include "seldist/rng.hpp"

namespace seldist {

/// The per-range halves of the MWU probability vector: wplus[i] = w[2i+2],
/// wminus[i] = w[2i+1] in 0-based storage (w[0] is the aggregate row).
struct WeightSplit {
  std::vector<double> wplus;
  std::vector<double> wminus;

  static WeightSplit from_probability_vector(std::span<const double> w);
  double plus_norm() const;
  double minus_norm() const;
};

/// A signed eps-approximation sample: r draws proportional to wplus, each at
/// weight +|wplus|_1 / r, and r draws proportional to wminus at
/// -|wminus|_1 / r. A zero-norm side is empty.
struct EpsApproxSample {
  std::vector<std::size_t> plus;   // indices into the range list
  std::vector<std::size_t> minus;
  double wplus_total = 0.0;
  double wminus_total = 0.0;
  std::size_t r = 0;

  double plus_weight() const { return plus.empty() ? 0.0 : wplus_total / static_cast<double>(r); }
  double minus_weight() const { return minus.empty() ? 0.0 : -wminus_total / static_cast<double>(r); }

  /// Expands to the (rect, signed weight) multiset, plus draws first.
  SignedWeightedRanges materialize(std::span<const Rect> ranges, int dim) const;
};

/// Prefix-sum table for sampling with replacement proportional to nonnegative
/// weights; a draw is a binary search over the cumulative sums, started from
/// a bucket lookup. Zero-weight entries are never drawn.
class SampleTable {
 public:
  explicit SampleTable(std::span<const double> weights);

  double total() const { return total_; }
  bool empty() const { return total_ <= 0.0; }

  std::size_t draw(RngStream& rng) const;

 private:
  std::vector<double> prefix_;
  std::vector<std::uint32_t> guide_;
  double total_ = 0.0;
};

/// r i.i.d. draws with replacement, Pr[i] = weights[i] / sum(weights).
/// Returns the empty multiset when all weights are zero.
std::vector<std::size_t> weighted_sample_indices(std::span<const double> weights, std::size_t r,
                                                 RngStream& rng);
std::vector<Rect> weighted_sample(std::span<const Rect> rects, std::span<const double> weights,
                                  std::size_t r, RngStream& rng);

EpsApproxSample build_eps_approx(std::span<const Rect> ranges, const WeightSplit& split,
                                 std::size_t r, RngStream& rng);

/// Median-trick approximate deepest point: mu independent eps-approximation
/// samples of size r per sign, an exact deepest point on each, and the
/// repetition whose sample depth is the median of the mu sample depths. The
/// returned value is the winning point's depth in its own sample. mu must be
/// odd. All weights zero yields (all-outside point, 0).
DeepestResult approx_deepest(std::span<const Rect> ranges, int dim, const WeightSplit& split,
                             double delta, std::size_t r, std::size_t mu, RngStream rng);

namespace detail {

/// Per-thread exact depth solvers over one fixed rectangle set, so callers
/// that solve many weight vectors (approx_deepest inner loop, the MWU round
/// loop) skip rebuilding coordinate compressions. thread_slots must cover the
/// highest thread id used.
class DepthOraclePool {
 public:
  DepthOraclePool(std::vector<Rect> rects, int dim, int thread_slots, bool force_grid = false);

  DeepestResult solve(std::span<const double> omega, int thread_id);

  /// Highest usable thread count (the grid solver is stateless and shared).
  int slots() const;

 private:
  bool use_sweep_ = false;
  std::vector<SweepDepthSolver2D> sweeps_;       // d == 2, one per thread
  std::vector<GridDepthSolver> grid_;            // otherwise, shared (solve is const)
};

struct ApproxDeepestOutcome {
  DeepestResult result;
  std::size_t winning_h = 0;  // 1-based index of the median repetition
};

/// approx_deepest with shared solver pool and the winning repetition index
/// exposed, so tests can rebuild sample N_xi from rng.substream(winning_h)
/// and check the reported value independently.
ApproxDeepestOutcome approx_deepest_full(std::span<const Rect> ranges, int dim,
                                         const WeightSplit& split, std::size_t r, std::size_t mu,
                                         RngStream rng, DepthOraclePool& pool);

}  // namespace detail

}  // namespace seldist
