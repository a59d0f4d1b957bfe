#include "seldist/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seldist {

namespace {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

}  // namespace

WeightSplit WeightSplit::from_probability_vector(std::span<const double> w) {
  if (w.empty() || w.size() % 2 == 0) {
    throw std::invalid_argument("WeightSplit: probability vector must have odd length 2n+1");
  }
  const std::size_t n = w.size() / 2;
  WeightSplit split;
  split.wplus.resize(n);
  split.wminus.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    split.wminus[i] = w[2 * i + 1];
    split.wplus[i] = w[2 * i + 2];
  }
  return split;
}

double WeightSplit::plus_norm() const {
  return std::accumulate(wplus.begin(), wplus.end(), 0.0);
}

double WeightSplit::minus_norm() const {
  return std::accumulate(wminus.begin(), wminus.end(), 0.0);
}

SignedWeightedRanges EpsApproxSample::materialize(std::span<const Rect> ranges, int dim) const {
  SignedWeightedRanges wr;
  wr.d = dim;
  wr.rects.reserve(plus.size() + minus.size());
  wr.omega.reserve(plus.size() + minus.size());
  const double wp = plus_weight();
  const double wm = minus_weight();
  for (std::size_t idx : plus) {
    wr.rects.push_back(ranges[idx]);
    wr.omega.push_back(wp);
  }
  for (std::size_t idx : minus) {
    wr.rects.push_back(ranges[idx]);
    wr.omega.push_back(wm);
  }
  return wr;
}

SampleTable::SampleTable(std::span<const double> weights) {
  prefix_.resize(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w >= 0.0)) throw std::invalid_argument("SampleTable: negative weight");
    acc += w;
    prefix_[i] = acc;
  }
  total_ = acc;
  if (total_ <= 0.0) return;

  std::size_t buckets = 64;
  while (buckets < 4 * weights.size()) buckets <<= 1;
  guide_.resize(buckets + 1);
  std::uint32_t j = 0;
  for (std::size_t b = 0; b <= buckets; ++b) {
    const double x = total_ * static_cast<double>(b) / static_cast<double>(buckets);
    while (j + 1 < prefix_.size() && prefix_[j] <= x) ++j;
    guide_[b] = j;
  }
}

std::size_t SampleTable::draw(RngStream& rng) const {
  double x = rng.next_double() * total_;
  if (!(x < total_)) x = std::nextafter(total_, 0.0);
  const std::size_t buckets = guide_.size() - 1;
  auto b = static_cast<std::size_t>(x / total_ * static_cast<double>(buckets));
  if (b >= buckets) b = buckets - 1;
  std::size_t i = guide_[b];
  while (prefix_[i] <= x) ++i;
  return i;
}

std::vector<std::size_t> weighted_sample_indices(std::span<const double> weights, std::size_t r,
                                                 RngStream& rng) {
  SampleTable table(weights);
  std::vector<std::size_t> out;
  if (table.empty()) return out;
  out.reserve(r);
  for (std::size_t k = 0; k < r; ++k) out.push_back(table.draw(rng));
  return out;
}

std::vector<Rect> weighted_sample(std::span<const Rect> rects, std::span<const double> weights,
                                  std::size_t r, RngStream& rng) {
  if (rects.size() != weights.size()) {
    throw std::invalid_argument("weighted_sample: rects/weights size mismatch");
  }
  std::vector<Rect> out;
  for (std::size_t idx : weighted_sample_indices(weights, r, rng)) out.push_back(rects[idx]);
  return out;
}

EpsApproxSample build_eps_approx(std::span<const Rect> ranges, const WeightSplit& split,
                                 std::size_t r, RngStream& rng) {
  if (r < 1) throw std::invalid_argument("build_eps_approx: r must be at least 1");
  if (split.wplus.size() != ranges.size() || split.wminus.size() != ranges.size()) {
    throw std::invalid_argument("build_eps_approx: weight split size mismatch");
  }
  EpsApproxSample sample;
  sample.r = r;
  sample.wplus_total = split.plus_norm();
  sample.wminus_total = split.minus_norm();
  sample.plus = weighted_sample_indices(split.wplus, r, rng);
  sample.minus = weighted_sample_indices(split.wminus, r, rng);
  return sample;
}

namespace detail {

DepthOraclePool::DepthOraclePool(std::vector<Rect> rects, int dim, int thread_slots,
                                 bool force_grid)
    : use_sweep_(dim == 2 && !force_grid) {
  if (thread_slots < 1) thread_slots = 1;
  if (use_sweep_) {
    sweeps_.reserve(static_cast<std::size_t>(thread_slots));
    for (int t = 0; t < thread_slots; ++t) sweeps_.emplace_back(rects, dim);
  } else {
    grid_.emplace_back(std::move(rects), dim);
  }
}

DeepestResult DepthOraclePool::solve(std::span<const double> omega, int tid) {
  if (use_sweep_) return sweeps_[static_cast<std::size_t>(tid)].solve(omega);
  return grid_[0].solve(omega);
}

int DepthOraclePool::slots() const {
  return use_sweep_ ? static_cast<int>(sweeps_.size()) : 1 << 20;
}

ApproxDeepestOutcome approx_deepest_full(std::span<const Rect> ranges, int dim,
                                         const WeightSplit& split, std::size_t r, std::size_t mu,
                                         RngStream rng, DepthOraclePool& pool) {
  const std::size_t n = ranges.size();
  if (mu < 1 || mu % 2 == 0) {
    throw std::invalid_argument("approx_deepest: mu must be a positive odd count");
  }
  if (r < 1) throw std::invalid_argument("approx_deepest: r must be at least 1");

  const SampleTable plus_table(split.wplus);
  const SampleTable minus_table(split.wminus);
  const double wp = split.plus_norm() / static_cast<double>(r);
  const double wm = split.minus_norm() / static_cast<double>(r);

  std::vector<DeepestResult> results(mu);
  const int workers = std::min(max_threads(), pool.slots());
  (void)workers;

#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
#endif
  {
    std::vector<double> omega_bar(n, 0.0);
    std::vector<std::size_t> touched;
    touched.reserve(2 * r);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (long long h = 1; h <= static_cast<long long>(mu); ++h) {
      RngStream sub = rng.substream(static_cast<std::uint64_t>(h));
      if (!plus_table.empty()) {
        for (std::size_t k = 0; k < r; ++k) {
          const std::size_t idx = plus_table.draw(sub);
          if (omega_bar[idx] == 0.0) touched.push_back(idx);
          omega_bar[idx] += wp;
        }
      }
      if (!minus_table.empty()) {
        for (std::size_t k = 0; k < r; ++k) {
          const std::size_t idx = minus_table.draw(sub);
          if (omega_bar[idx] == 0.0) touched.push_back(idx);
          omega_bar[idx] -= wm;
        }
      }

      DeepestResult best = pool.solve(omega_bar, thread_id());
      // Report the point's depth in this sample, summed in range order; the
      // tree/scan value can differ by association order.
      double value = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (omega_bar[i] != 0.0 && detail::contains_unchecked(ranges[i], best.point.data())) {
          value += omega_bar[i];
        }
      }
      results[static_cast<std::size_t>(h) - 1] = DeepestResult{std::move(best.point), value};

      for (std::size_t idx : touched) omega_bar[idx] = 0.0;
      touched.clear();
    }
  }

  // Repetition with the median sample depth; ties resolve to the earlier one.
  std::vector<std::size_t> order(mu);
  for (std::size_t h = 0; h < mu; ++h) order[h] = h;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (results[a].value != results[b].value) return results[a].value < results[b].value;
    return a < b;
  });
  const std::size_t xi = order[mu / 2];
  return ApproxDeepestOutcome{results[xi], xi + 1};
}

}  // namespace detail

DeepestResult approx_deepest(std::span<const Rect> ranges, int dim, const WeightSplit& split,
                             double delta, std::size_t r, std::size_t mu, RngStream rng) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("approx_deepest: delta must lie in (0, 1]");
  }
  detail::DepthOraclePool pool(std::vector<Rect>(ranges.begin(), ranges.end()), dim, max_threads());
  return detail::approx_deepest_full(ranges, dim, split, r, mu, rng, pool).result;
}

}  // namespace seldist
