#include "seldist/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace seldist {

std::pair<Workload, GroundTruth> gen_consistent(std::size_t n, int d, std::size_t k,
                                                RngStream rng) {
  if (n < 1 || k < 1 || d < 1) {
    throw std::invalid_argument("gen_consistent: n, k and d must be at least 1");
  }

  std::vector<Atom> atoms;
  atoms.reserve(k);
  double mass = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    Point x(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) x[static_cast<std::size_t>(c)] = rng.next_double();
    const double w = 1.0 - rng.next_double();  // (0, 1]
    mass += w;
    atoms.push_back(Atom{std::move(x), w});
  }
  for (Atom& a : atoms) a.w /= mass;
  GroundTruth truth{make_distribution(d, std::move(atoms))};

  Workload z;
  z.d = d;
  z.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) {
      const double a = rng.next_double();
      const double b = rng.next_double();
      lo[static_cast<std::size_t>(c)] = std::min(a, b);
      hi[static_cast<std::size_t>(c)] = std::max(a, b);
    }
    Rect rect(std::move(lo), std::move(hi));
    const double s = selectivity(truth.distribution, rect);
    z.samples.push_back(TrainingSample{std::move(rect), s});
  }
  return {std::move(z), std::move(truth)};
}

Workload gen_cover_gadget(int d, std::size_t m) {
  if (d < 1 || m < 2) throw std::invalid_argument("gen_cover_gadget: need d >= 1, m >= 2");
  Workload z;
  z.d = d;
  z.samples.reserve(m + 1);

  Point lo(static_cast<std::size_t>(d), 0.0);
  Point hi(static_cast<std::size_t>(d), 1.0);
  z.samples.push_back(TrainingSample{Rect(lo, hi), 1.0});

  for (std::size_t j = 0; j < m; ++j) {
    Point slab_lo(static_cast<std::size_t>(d), 0.0);
    Point slab_hi(static_cast<std::size_t>(d), 1.0);
    slab_lo[0] = static_cast<double>(j) / static_cast<double>(m);
    slab_hi[0] = static_cast<double>(j + 1) / static_cast<double>(m);
    z.samples.push_back(TrainingSample{Rect(std::move(slab_lo), std::move(slab_hi)), 0.0});
  }
  return z;
}

double exhaustive_opt(const Workload& z, ErrorNorm p, long long grid_weights) {
  const std::size_t n = z.size();
  if (n > 5 || z.d > 2) throw std::invalid_argument("exhaustive_opt: instance too large");
  if (grid_weights < 1) throw std::invalid_argument("exhaustive_opt: grid_weights must be >= 1");

  const std::vector<Rect> rects = z.rects();
  const std::vector<Point> candidates = candidate_grid(rects, z.d);
  if (candidates.size() > 30) throw std::invalid_argument("exhaustive_opt: instance too large");

  // Distinct nonzero containment signatures; weight outside every range
  // never changes the error, so the zero signature is dropped.
  std::vector<std::uint32_t> signatures;
  for (const Point& c : candidates) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (detail::contains_unchecked(rects[i], c.data())) mask |= 1u << i;
    }
    if (mask != 0) signatures.push_back(mask);
  }
  std::sort(signatures.begin(), signatures.end());
  signatures.erase(std::unique(signatures.begin(), signatures.end()), signatures.end());

  const auto g = static_cast<std::size_t>(grid_weights);
  std::size_t states = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (states > (std::size_t{1} << 40) / (g + 1)) {
      throw std::invalid_argument("exhaustive_opt: instance too large");
    }
    states *= g + 1;
  }
  if (states > (std::size_t{1} << 24) ||
      states * std::max<std::size_t>(signatures.size(), 1) > (std::size_t{1} << 28)) {
    throw std::invalid_argument("exhaustive_opt: instance too large");
  }

  // Minimum unit count reaching each per-range count vector; a unit is one
  // weight quantum 1/g placed on one signature. Row-major order visits every
  // componentwise-smaller vector first.
  constexpr std::uint32_t kUnreached = 0xFFFFFFFFu;
  std::vector<std::size_t> stride(n);
  for (std::size_t i = 0; i < n; ++i) {
    stride[i] = i == 0 ? 1 : stride[i - 1] * (g + 1);
  }
  std::vector<std::uint32_t> min_units(states, kUnreached);
  min_units[0] = 0;

  std::vector<std::size_t> sig_offsets;
  std::vector<std::uint32_t> sig_masks;
  for (std::uint32_t mask : signatures) {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) offset += stride[i];
    }
    sig_offsets.push_back(offset);
    sig_masks.push_back(mask);
  }

  std::vector<std::size_t> digits(n, 0);
  for (std::size_t idx = 0; idx < states; ++idx) {
    if (idx > 0) {
      std::size_t c = 0;
      while (digits[c] == g) digits[c++] = 0;
      ++digits[c];
    }
    for (std::size_t s = 0; s < sig_masks.size(); ++s) {
      bool fits = true;
      for (std::size_t i = 0; i < n && fits; ++i) {
        if ((sig_masks[s] & (1u << i)) && digits[i] == 0) fits = false;
      }
      if (!fits) continue;
      const std::uint32_t prev = min_units[idx - sig_offsets[s]];
      if (prev != kUnreached && prev + 1 < min_units[idx]) {
        min_units[idx] = prev + 1;
      }
    }
  }

  double best = -1.0;
  std::fill(digits.begin(), digits.end(), 0);
  for (std::size_t idx = 0; idx < states; ++idx) {
    if (idx > 0) {
      std::size_t c = 0;
      while (digits[c] == g) digits[c++] = 0;
      ++digits[c];
    }
    if (min_units[idx] > g) continue;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e =
          static_cast<double>(digits[i]) / static_cast<double>(g) - z.samples[i].s;
      switch (p) {
        case ErrorNorm::kL1:
          err += std::abs(e);
          break;
        case ErrorNorm::kL2:
          err += e * e;
          break;
        case ErrorNorm::kLInf:
          err = std::max(err, std::abs(e));
          break;
      }
    }
    if (p != ErrorNorm::kLInf) err /= static_cast<double>(n);
    if (best < 0.0 || err < best) best = err;
  }
  return best;
}

}  // namespace seldist
