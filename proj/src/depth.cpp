#include "seldist/depth.hpp"

#include <algorithm>
#include <stdexcept>

namespace seldist {

namespace {

constexpr double kNegInf = -1e300;

void check_ranges(const SignedWeightedRanges& wr) {
  if (wr.rects.size() != wr.omega.size()) {
    throw std::invalid_argument("deepest_point: rects/omega size mismatch");
  }
}

}  // namespace

GridDepthSolver::GridDepthSolver(std::vector<Rect> rects, int dim)
    : dim_(dim), rects_(std::move(rects)) {
  candidates_ = candidate_grid(rects_, dim_);
  incidence_start_.reserve(candidates_.size() + 1);
  incidence_start_.push_back(0);
  for (const Point& p : candidates_) {
    for (std::size_t i = 0; i < rects_.size(); ++i) {
      if (detail::contains_unchecked(rects_[i], p.data())) incidence_.push_back(i);
    }
    incidence_start_.push_back(incidence_.size());
  }
}

DeepestResult GridDepthSolver::solve(std::span<const double> omega) const {
  if (omega.size() != rects_.size()) {
    throw std::invalid_argument("GridDepthSolver::solve: weight count mismatch");
  }
  // The lex-smallest candidate lies outside every rectangle, so the scan
  // starts from depth 0 and the result is never negative.
  std::size_t best_idx = 0;
  double best = kNegInf;
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    double v = 0.0;
    for (std::size_t k = incidence_start_[c]; k < incidence_start_[c + 1]; ++k) {
      v += omega[incidence_[k]];
    }
    if (v > best) {
      best = v;
      best_idx = c;
    }
  }
  return DeepestResult{candidates_[best_idx], best};
}

SweepDepthSolver2D::SweepDepthSolver2D(std::vector<Rect> rects, int dim)
    : rects_(std::move(rects)) {
  if (dim != 2) throw std::invalid_argument("SweepDepthSolver2D: dimension must be 2");
  for (const Rect& r : rects_) detail::require_dim(2, r.dim(), "SweepDepthSolver2D");
  if (rects_.empty()) return;

  xs_.reserve(2 * rects_.size());
  ys_.reserve(2 * rects_.size());
  for (const Rect& r : rects_) {
    xs_.push_back(r.lo[0]);
    xs_.push_back(r.hi[0]);
    ys_.push_back(r.lo[1]);
    ys_.push_back(r.hi[1]);
  }
  std::sort(xs_.begin(), xs_.end());
  xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
  std::sort(ys_.begin(), ys_.end());
  ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());

  // y-gap g spans (ys_[g-1], ys_[g]); gaps 0 and ys_.size() are unbounded.
  gaps_ = static_cast<int>(ys_.size()) + 1;
  events_at_.resize(xs_.size());
  for (std::size_t i = 0; i < rects_.size(); ++i) {
    const Rect& r = rects_[i];
    const auto xlo = static_cast<std::size_t>(
        std::lower_bound(xs_.begin(), xs_.end(), r.lo[0]) - xs_.begin());
    const auto xhi = static_cast<std::size_t>(
        std::lower_bound(xs_.begin(), xs_.end(), r.hi[0]) - xs_.begin());
    const int ylo = static_cast<int>(std::lower_bound(ys_.begin(), ys_.end(), r.lo[1]) - ys_.begin());
    const int yhi = static_cast<int>(std::lower_bound(ys_.begin(), ys_.end(), r.hi[1]) - ys_.begin());
    // Covered gaps lie strictly inside [lo[1], hi[1]]: indices ylo+1 .. yhi.
    events_at_[xlo].push_back(Event{i, ylo + 1, yhi, true});
    events_at_[xhi].push_back(Event{i, ylo + 1, yhi, false});
  }

  int size = 1;
  while (size < gaps_) size <<= 1;
  best_.assign(static_cast<std::size_t>(2 * size), 0.0);
  add_.assign(static_cast<std::size_t>(2 * size), 0.0);
  arg_.assign(static_cast<std::size_t>(2 * size), 0);
}

void SweepDepthSolver2D::tree_reset() {
  const int size = static_cast<int>(best_.size()) / 2;
  for (int i = 0; i < size; ++i) {
    const int leaf = size + i;
    best_[leaf] = i < gaps_ ? 0.0 : kNegInf;
    add_[leaf] = 0.0;
    arg_[leaf] = i;
  }
  for (int v = size - 1; v >= 1; --v) {
    add_[v] = 0.0;
    const int l = 2 * v, r = 2 * v + 1;
    if (best_[l] >= best_[r]) {
      best_[v] = best_[l];
      arg_[v] = arg_[l];
    } else {
      best_[v] = best_[r];
      arg_[v] = arg_[r];
    }
  }
}

void SweepDepthSolver2D::tree_add(int node, int node_lo, int node_hi, int lo, int hi, double w) {
  if (hi < node_lo || node_hi < lo) return;
  if (lo <= node_lo && node_hi <= hi) {
    add_[node] += w;
    best_[node] += w;
    return;
  }
  const int mid = node_lo + (node_hi - node_lo) / 2;
  tree_add(2 * node, node_lo, mid, lo, hi, w);
  tree_add(2 * node + 1, mid + 1, node_hi, lo, hi, w);
  const int l = 2 * node, r = 2 * node + 1;
  if (best_[l] >= best_[r]) {
    best_[node] = best_[l] + add_[node];
    arg_[node] = arg_[l];
  } else {
    best_[node] = best_[r] + add_[node];
    arg_[node] = arg_[r];
  }
}

DeepestResult SweepDepthSolver2D::solve(std::span<const double> omega) {
  if (omega.size() != rects_.size()) {
    throw std::invalid_argument("SweepDepthSolver2D::solve: weight count mismatch");
  }
  if (rects_.empty()) return DeepestResult{Point{0.0, 0.0}, 0.0};

  tree_reset();
  const int size = static_cast<int>(best_.size()) / 2;

  auto gap_mid = [&](int g) {
    if (g == 0) return ys_.front() - 1.0;
    if (g == gaps_ - 1) return ys_.back() + 1.0;
    return ys_[static_cast<std::size_t>(g) - 1] + (ys_[static_cast<std::size_t>(g)] - ys_[static_cast<std::size_t>(g) - 1]) / 2.0;
  };

  // Slab left of every rectangle: depth 0 at an all-outside point.
  double best_value = 0.0;
  Point best_point{xs_.front() - 1.0, ys_.front() - 1.0};

  for (std::size_t e = 0; e < xs_.size(); ++e) {
    for (const Event& ev : events_at_[e]) {
      const double w = ev.open ? omega[ev.rect] : -omega[ev.rect];
      if (w == 0.0 || ev.yhi_gap < ev.ylo_gap) continue;
      tree_add(1, 0, size - 1, ev.ylo_gap, ev.yhi_gap, w);
    }
    if (best_[1] > best_value) {
      best_value = best_[1];
      const double x_rep = (e + 1 < xs_.size()) ? xs_[e] + (xs_[e + 1] - xs_[e]) / 2.0
                                                : xs_.back() + 1.0;
      best_point = Point{x_rep, gap_mid(arg_[1])};
    }
  }
  return DeepestResult{std::move(best_point), best_value};
}

DeepestResult deepest_point_grid(const SignedWeightedRanges& wr) {
  check_ranges(wr);
  return GridDepthSolver(wr.rects, wr.d).solve(wr.omega);
}

DeepestResult deepest_point_sweep2d(const SignedWeightedRanges& wr) {
  check_ranges(wr);
  if (wr.d != 2) throw std::invalid_argument("deepest_point_sweep2d: dimension must be 2");
  return SweepDepthSolver2D(wr.rects, wr.d).solve(wr.omega);
}

DeepestResult deepest_point(const SignedWeightedRanges& wr) {
  return wr.d == 2 ? deepest_point_sweep2d(wr) : deepest_point_grid(wr);
}

}  // namespace seldist
