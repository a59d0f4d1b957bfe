#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seldist {

using Point = std::vector<double>;

/// Axis-aligned closed box in R^d. Degenerate (zero-width) faces are allowed
/// and behave as closed slabs.
struct Rect {
  Point lo;
  Point hi;

  Rect() = default;
  Rect(Point lo_coords, Point hi_coords);

  int dim() const { return static_cast<int>(lo.size()); }
};

/// One observed range query: a rectangle and its selectivity in [0, 1].
struct TrainingSample {
  Rect rect;
  double s = 0.0;
};

struct Workload {
  int d = 0;
  std::vector<TrainingSample> samples;

  std::size_t size() const { return samples.size(); }
  std::vector<Rect> rects() const;
};

struct Atom {
  Point x;
  double w = 0.0;
};

/// Weighted point set. Total weight may stay below 1; add_sink() completes
/// it without touching any selectivity.
struct DiscreteDistribution {
  int d = 0;
  std::vector<Atom> atoms;

  std::size_t size() const { return atoms.size(); }
  double total_weight() const;
};

/// Rectangles with real (possibly negative) weights, the input of weighted
/// depth queries.
struct SignedWeightedRanges {
  int d = 0;
  std::vector<Rect> rects;
  std::vector<double> omega;

  std::size_t size() const { return rects.size(); }
};

enum class ErrorNorm { kL1, kL2, kLInf };

/// Closed-box membership test. Throws on dimension mismatch.
bool contains(const Rect& r, std::span<const double> x);

/// Total distribution mass inside r, summed in atom order.
double selectivity(const DiscreteDistribution& dist, const Rect& r);

/// Eq-style empirical error:
///   L1:   (1/n) sum |s_D(R_i) - s_i|
///   L2:   (1/n) sum (s_D(R_i) - s_i)^2
///   LInf: max_i |s_D(R_i) - s_i|
double empirical_error(const DiscreteDistribution& dist, const Workload& z, ErrorNorm p);

/// Signed weighted depth: sum of omega over ranges containing x, in input
/// order (tests rely on that association order).
double depth(std::span<const double> x, const SignedWeightedRanges& wr);

/// One representative point per cell of (a superset of) the arrangement of
/// the rectangles: per axis, midpoints between consecutive distinct
/// endpoints plus one coordinate outside each extreme, combined as a
/// Cartesian product. Output is sorted lexicographically. An empty input
/// yields the single point at the origin of R^dim.
std::vector<Point> candidate_grid(std::span<const Rect> rects, int dim);

/// Canonical form: merges coinciding points (exact coordinate equality),
/// drops nonpositive-weight atoms, sorts lexicographically.
DiscreteDistribution make_distribution(int d, std::vector<Atom> atoms);

namespace detail {

/// Membership without the dimension check, for validated hot loops.
inline bool contains_unchecked(const Rect& r, const double* x) {
  const std::size_t d = r.lo.size();
  for (std::size_t j = 0; j < d; ++j) {
    if (x[j] < r.lo[j] || x[j] > r.hi[j]) return false;
  }
  return true;
}

void require_dim(int expected, int got, const char* what);

}  // namespace detail

}  // namespace seldist
