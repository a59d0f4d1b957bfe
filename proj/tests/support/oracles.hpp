#pragma once

// Test-side reference implementations, written directly against the
// definitions and kept independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "seldist/geometry.hpp"
#include "seldist/rng.hpp"

namespace oracles {

inline bool point_in_box(const seldist::Rect& r, const seldist::Point& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(r.lo[j] <= x[j] && x[j] <= r.hi[j])) return false;
  }
  return true;
}

inline double brute_selectivity(const seldist::DiscreteDistribution& dist,
                                const seldist::Rect& r) {
  double s = 0.0;
  for (const auto& a : dist.atoms) {
    if (point_in_box(r, a.x)) s += a.w;
  }
  return s;
}

inline double brute_depth(const seldist::Point& x, const std::vector<seldist::Rect>& rects,
                          const std::vector<double>& omega) {
  double v = 0.0;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    if (point_in_box(rects[i], x)) v += omega[i];
  }
  return v;
}

inline double brute_error(const seldist::DiscreteDistribution& dist, const seldist::Workload& z,
                          seldist::ErrorNorm p) {
  double acc = 0.0;
  for (const auto& sample : z.samples) {
    const double e = std::abs(brute_selectivity(dist, sample.rect) - sample.s);
    if (p == seldist::ErrorNorm::kL1) acc += e;
    if (p == seldist::ErrorNorm::kL2) acc += e * e;
    if (p == seldist::ErrorNorm::kLInf) acc = std::max(acc, e);
  }
  return p == seldist::ErrorNorm::kLInf ? acc : acc / static_cast<double>(z.samples.size());
}

inline seldist::Rect random_rect(seldist::RngStream& rng, int d, double lo = 0.0,
                                 double hi = 1.0) {
  seldist::Point a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const double u = rng.next_double(lo, hi);
    const double v = rng.next_double(lo, hi);
    a[static_cast<std::size_t>(j)] = std::min(u, v);
    b[static_cast<std::size_t>(j)] = std::max(u, v);
  }
  return seldist::Rect(std::move(a), std::move(b));
}

inline seldist::Point random_point(seldist::RngStream& rng, int d, double lo = -0.5,
                                   double hi = 1.5) {
  seldist::Point x(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = rng.next_double(lo, hi);
  return x;
}

inline std::vector<bool> containment_signature(const seldist::Point& x,
                                               const std::vector<seldist::Rect>& rects) {
  std::vector<bool> sig(rects.size());
  for (std::size_t i = 0; i < rects.size(); ++i) sig[i] = point_in_box(rects[i], x);
  return sig;
}

inline seldist::SignedWeightedRanges random_signed_ranges(seldist::RngStream& rng, int d,
                                                          std::size_t n, double wlo = -1.0,
                                                          double whi = 1.0) {
  seldist::SignedWeightedRanges wr;
  wr.d = d;
  for (std::size_t i = 0; i < n; ++i) {
    wr.rects.push_back(random_rect(rng, d));
    wr.omega.push_back(rng.next_double(wlo, whi));
  }
  return wr;
}

}  // namespace oracles
