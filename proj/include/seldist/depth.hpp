#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seldist/geometry.hpp"

namespace seldist {

struct DeepestResult {
  Point point;
  double value = 0.0;
};

/// Exact maximum weighted-depth point by scanning the candidate grid of the
/// input rectangles. The all-outside corner is always a candidate, so the
/// value is never negative. Ties break to the lexicographically smallest
/// candidate. Containment lists are precomputed once, so a solver instance
/// can be reused across many weight vectors; solve() is const and
/// thread-safe.
class GridDepthSolver {
 public:
  GridDepthSolver(std::vector<Rect> rects, int dim);

  DeepestResult solve(std::span<const double> omega) const;

  const std::vector<Point>& candidates() const { return candidates_; }

 private:
  int dim_;
  std::vector<Rect> rects_;
  std::vector<Point> candidates_;
  // Rect indices containing each candidate, ascending, flattened.
  std::vector<std::size_t> incidence_;
  std::vector<std::size_t> incidence_start_;
};

/// Maximum weighted-depth point for d == 2 via an x-sweep over a range-add /
/// global-max segment tree on compressed y-gaps. Returns the same value as
/// the grid solver (the representative point may differ). Event lists and
/// coordinate compression are built once; solve() reuses internal scratch,
/// so one instance must not be shared across threads.
class SweepDepthSolver2D {
 public:
  SweepDepthSolver2D(std::vector<Rect> rects, int dim);

  /// omega[i] weights rects[i]; entries equal to 0.0 are skipped.
  DeepestResult solve(std::span<const double> omega);

 private:
  struct Event {
    std::size_t rect;
    int ylo_gap;  // first covered y-gap index
    int yhi_gap;  // last covered y-gap index (inclusive); < ylo_gap if none
    bool open;
  };

  void tree_reset();
  void tree_add(int node, int node_lo, int node_hi, int lo, int hi, double w);

  std::vector<Rect> rects_;
  std::vector<double> xs_;  // distinct x endpoints
  std::vector<double> ys_;  // distinct y endpoints
  int gaps_ = 0;            // y-gap count = ys_.size() + 1
  std::vector<std::vector<Event>> events_at_;  // per x endpoint

  // Segment tree, heap layout. best_ holds the subtree max plus all pending
  // adds below; arg_ the gap index attaining it (smallest on ties).
  std::vector<double> best_;
  std::vector<double> add_;
  std::vector<int> arg_;
  const double* omega_ = nullptr;
};

/// Grid-scan deepest point (the oracle path, any d).
DeepestResult deepest_point_grid(const SignedWeightedRanges& wr);

/// Sweepline deepest point; requires d == 2.
DeepestResult deepest_point_sweep2d(const SignedWeightedRanges& wr);

/// Dispatch: sweepline for d == 2, grid scan otherwise.
DeepestResult deepest_point(const SignedWeightedRanges& wr);

}  // namespace seldist
