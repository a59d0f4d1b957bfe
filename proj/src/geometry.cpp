#include "seldist/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace seldist {

namespace detail {

void require_dim(int expected, int got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(expected) + " vs " + std::to_string(got) + ")");
  }
}

}  // namespace detail

Rect::Rect(Point lo_coords, Point hi_coords) : lo(std::move(lo_coords)), hi(std::move(hi_coords)) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("Rect: lo/hi must be nonempty and of equal dimension");
  }
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (!(lo[j] <= hi[j])) {
      throw std::invalid_argument("Rect: lo[" + std::to_string(j) + "] > hi[" + std::to_string(j) + "]");
    }
  }
}

std::vector<Rect> Workload::rects() const {
  std::vector<Rect> out;
  out.reserve(samples.size());
  for (const auto& z : samples) out.push_back(z.rect);
  return out;
}

double DiscreteDistribution::total_weight() const {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.w;
  return sum;
}

bool contains(const Rect& r, std::span<const double> x) {
  detail::require_dim(r.dim(), static_cast<int>(x.size()), "contains");
  return detail::contains_unchecked(r, x.data());
}

double selectivity(const DiscreteDistribution& dist, const Rect& r) {
  detail::require_dim(dist.d, r.dim(), "selectivity");
  double sum = 0.0;
  for (const auto& a : dist.atoms) {
    if (detail::contains_unchecked(r, a.x.data())) sum += a.w;
  }
  return sum;
}

double empirical_error(const DiscreteDistribution& dist, const Workload& z, ErrorNorm p) {
  detail::require_dim(dist.d, z.d, "empirical_error");
  const double n = static_cast<double>(z.size());
  double acc = 0.0;
  for (const auto& sample : z.samples) {
    const double e = selectivity(dist, sample.rect) - sample.s;
    switch (p) {
      case ErrorNorm::kL1:
        acc += std::abs(e);
        break;
      case ErrorNorm::kL2:
        acc += e * e;
        break;
      case ErrorNorm::kLInf:
        acc = std::max(acc, std::abs(e));
        break;
    }
  }
  return p == ErrorNorm::kLInf ? acc : acc / n;
}

double depth(std::span<const double> x, const SignedWeightedRanges& wr) {
  detail::require_dim(wr.d, static_cast<int>(x.size()), "depth");
  if (wr.rects.size() != wr.omega.size()) {
    throw std::invalid_argument("depth: rects/omega size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < wr.rects.size(); ++i) {
    if (detail::contains_unchecked(wr.rects[i], x.data())) sum += wr.omega[i];
  }
  return sum;
}

std::vector<Point> candidate_grid(std::span<const Rect> rects, int dim) {
  if (dim < 0) throw std::invalid_argument("candidate_grid: negative dimension");
  if (rects.empty()) return {Point(static_cast<std::size_t>(dim), 0.0)};

  // Per-axis coordinates: strict midpoints of consecutive distinct endpoints
  // plus one coordinate outside each extreme.
  std::vector<std::vector<double>> axis(static_cast<std::size_t>(dim));
  for (const Rect& r : rects) {
    detail::require_dim(dim, r.dim(), "candidate_grid");
    for (int j = 0; j < dim; ++j) {
      axis[j].push_back(r.lo[j]);
      axis[j].push_back(r.hi[j]);
    }
  }
  std::size_t count = 1;
  for (auto& coords : axis) {
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    std::vector<double> reps;
    reps.reserve(coords.size() + 1);
    reps.push_back(coords.front() - 1.0);
    for (std::size_t k = 0; k + 1 < coords.size(); ++k) {
      reps.push_back(coords[k] + (coords[k + 1] - coords[k]) / 2.0);
    }
    reps.push_back(coords.back() + 1.0);
    coords = std::move(reps);
    count *= coords.size();
  }

  // Cartesian product, axis 0 most significant, so output is lex-sorted.
  std::vector<Point> out;
  out.reserve(count);
  std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
  Point p(static_cast<std::size_t>(dim));
  for (;;) {
    for (int j = 0; j < dim; ++j) p[static_cast<std::size_t>(j)] = axis[j][idx[j]];
    out.push_back(p);
    int j = dim - 1;
    while (j >= 0 && ++idx[j] == axis[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

DiscreteDistribution make_distribution(int d, std::vector<Atom> atoms) {
  std::map<Point, double> merged;
  for (auto& a : atoms) {
    detail::require_dim(d, static_cast<int>(a.x.size()), "make_distribution");
    merged[std::move(a.x)] += a.w;
  }
  DiscreteDistribution dist;
  dist.d = d;
  dist.atoms.reserve(merged.size());
  for (auto& [x, w] : merged) {
    if (w > 0.0) dist.atoms.push_back(Atom{x, w});
  }
  return dist;
}

}  // namespace seldist
