#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "seldist/geometry.hpp"
#include "support/oracles.hpp"

using namespace seldist;

namespace {

Rect box1(double lo, double hi) { return Rect({lo}, {hi}); }

DiscreteDistribution dist1(std::vector<std::pair<double, double>> atoms) {
  DiscreteDistribution d;
  d.d = 1;
  for (auto& [x, w] : atoms) d.atoms.push_back(Atom{{x}, w});
  return d;
}

}  // namespace

TEST_CASE("contains: closed boxes") {
  CHECK(contains(box1(0, 1), Point{0.5}));
  CHECK(contains(box1(0, 1), Point{1.0}));
  CHECK(contains(box1(0, 1), Point{0.0}));
  CHECK_FALSE(contains(Rect({0, 0}, {1, 1}), Point{0.5, 2.0}));
  CHECK_THROWS_AS((void)contains(box1(0, 1), Point{0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("contains: degenerate boxes are closed slabs") {
  const Rect slab({0.5, 0.0}, {0.5, 1.0});
  CHECK(contains(slab, Point{0.5, 0.3}));
  CHECK_FALSE(contains(slab, Point{0.5000001, 0.3}));
}

TEST_CASE("selectivity: atom sums") {
  CHECK(selectivity(dist1({{0.5, 1.0}}), box1(0, 1)) == 1.0);
  CHECK(selectivity(dist1({{0.5, 0.3}, {5.0, 0.7}}), box1(0, 1)) == 0.3);
  CHECK_THROWS_AS((void)selectivity(dist1({{0.5, 1.0}}), Rect({0, 0}, {1, 1})),
                  std::invalid_argument);
}

TEST_CASE("selectivity: random atoms match the direct loop") {
  RngStream rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    DiscreteDistribution dist;
    dist.d = 2;
    double mass = 0.0;
    for (int j = 0; j < 50; ++j) {
      const double w = rng.next_double(0.0, 0.02);
      dist.atoms.push_back(Atom{oracles::random_point(rng, 2, 0.0, 1.0), w});
      mass += w;
    }
    const Rect r = oracles::random_rect(rng, 2);
    CHECK(selectivity(dist, r) == doctest::Approx(oracles::brute_selectivity(dist, r)).epsilon(1e-12));
    CHECK(selectivity(dist, r) >= 0.0);
    CHECK(selectivity(dist, r) <= mass + 1e-12);
  }
}

TEST_CASE("empirical_error: fixed cases") {
  Workload z;
  z.d = 1;
  z.samples.push_back({box1(0, 1), 1.0});
  const auto inside = dist1({{0.5, 1.0}});
  CHECK(empirical_error(inside, z, ErrorNorm::kL1) == 0.0);
  CHECK(empirical_error(inside, z, ErrorNorm::kL2) == 0.0);
  CHECK(empirical_error(inside, z, ErrorNorm::kLInf) == 0.0);

  Workload z2;
  z2.d = 1;
  z2.samples.push_back({box1(0, 1), 0.4});
  const auto heavy = dist1({{0.5, 0.9}});
  CHECK(empirical_error(heavy, z2, ErrorNorm::kL1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(empirical_error(heavy, z2, ErrorNorm::kL2) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(empirical_error(heavy, z2, ErrorNorm::kLInf) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empirical_error: random workload matches term-by-term oracle") {
  RngStream rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    Workload z;
    z.d = 2;
    for (int i = 0; i < 3; ++i) {
      z.samples.push_back({oracles::random_rect(rng, 2), rng.next_double()});
    }
    DiscreteDistribution dist;
    dist.d = 2;
    for (int j = 0; j < 5; ++j) {
      dist.atoms.push_back(Atom{oracles::random_point(rng, 2, 0.0, 1.0), 0.1});
    }
    for (auto p : {ErrorNorm::kL1, ErrorNorm::kL2, ErrorNorm::kLInf}) {
      CHECK(empirical_error(dist, z, p) ==
            doctest::Approx(oracles::brute_error(dist, z, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("empirical_error is zero iff all selectivities match") {
  RngStream rng(13);
  Workload z;
  z.d = 1;
  z.samples.push_back({box1(0, 1), 0.5});
  z.samples.push_back({box1(2, 3), 0.5});
  const auto exact = dist1({{0.5, 0.5}, {2.5, 0.5}});
  const auto off = dist1({{0.5, 0.5}, {2.5, 0.4}});
  for (auto p : {ErrorNorm::kL1, ErrorNorm::kL2, ErrorNorm::kLInf}) {
    CHECK(empirical_error(exact, z, p) == 0.0);
    CHECK(empirical_error(off, z, p) > 0.0);
  }
}

TEST_CASE("depth: fixed cases") {
  SignedWeightedRanges one{1, {box1(0, 1)}, {0.3}};
  CHECK(depth(Point{0.5}, one) == doctest::Approx(0.3));

  SignedWeightedRanges two{1, {box1(0, 2), box1(1, 3)}, {0.3, -0.1}};
  CHECK(depth(Point{1.5}, two) == doctest::Approx(0.2));
}

TEST_CASE("depth: random instances match the loop oracle") {
  RngStream rng(17);
  for (int rep = 0; rep < 25; ++rep) {
    const auto wr = oracles::random_signed_ranges(rng, 2, 20);
    const Point x = oracles::random_point(rng, 2);
    CHECK(depth(x, wr) == doctest::Approx(oracles::brute_depth(x, wr.rects, wr.omega)).epsilon(1e-12));
  }
}

TEST_CASE("depth additivity over disjoint index sets, input order") {
  RngStream rng(19);
  auto wr = oracles::random_signed_ranges(rng, 2, 16);
  const Point x = oracles::random_point(rng, 2);

  SignedWeightedRanges head{2,
                            {wr.rects.begin(), wr.rects.begin() + 9},
                            {wr.omega.begin(), wr.omega.begin() + 9}};
  SignedWeightedRanges tail{2,
                            {wr.rects.begin() + 9, wr.rects.end()},
                            {wr.omega.begin() + 9, wr.omega.end()}};
  CHECK(depth(x, wr) == doctest::Approx(depth(x, head) + depth(x, tail)).epsilon(1e-12));
}

TEST_CASE("candidate_grid: small fixed cases") {
  CHECK(candidate_grid(std::vector<Rect>{box1(0, 1)}, 1).size() == 3);
  CHECK(candidate_grid(std::vector<Rect>{box1(0, 1), box1(2, 3)}, 1).size() == 5);
  CHECK(candidate_grid(std::vector<Rect>{}, 2) == std::vector<Point>{Point{0.0, 0.0}});
}

TEST_CASE("candidate_grid: size bound and lexicographic order") {
  RngStream rng(23);
  std::vector<Rect> rects;
  for (int i = 0; i < 6; ++i) rects.push_back(oracles::random_rect(rng, 2));
  const auto points = candidate_grid(rects, 2);
  CHECK(points.size() <= (2 * rects.size() + 1) * (2 * rects.size() + 1));
  CHECK(std::is_sorted(points.begin(), points.end()));
}

TEST_CASE("candidate_grid: covers every containment signature hit by random points") {
  RngStream rng(29);
  for (int d = 1; d <= 3; ++d) {
    for (int rep = 0; rep < 6; ++rep) {
      std::vector<Rect> rects;
      const int n = 3 + static_cast<int>(rng.next_below(6));
      for (int i = 0; i < n; ++i) rects.push_back(oracles::random_rect(rng, d));
      const auto points = candidate_grid(rects, d);

      std::set<std::vector<bool>> grid_signatures;
      for (const auto& p : points) grid_signatures.insert(oracles::containment_signature(p, rects));

      for (int probe = 0; probe < 400; ++probe) {
        const Point x = oracles::random_point(rng, d);
        CHECK(grid_signatures.count(oracles::containment_signature(x, rects)) == 1);
      }
    }
  }
}

TEST_CASE("make_distribution merges equal points and sorts") {
  DiscreteDistribution d = make_distribution(
      1, {Atom{{2.0}, 0.25}, Atom{{1.0}, 0.25}, Atom{{2.0}, 0.5}, Atom{{3.0}, 0.0}});
  REQUIRE(d.atoms.size() == 2);
  CHECK(d.atoms[0].x == Point{1.0});
  CHECK(d.atoms[1].x == Point{2.0});
  CHECK(d.atoms[1].w == doctest::Approx(0.75));
  CHECK(d.total_weight() == doctest::Approx(1.0));
}

TEST_CASE("Rect validation") {
  CHECK_THROWS_AS(Rect({1.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Rect({0.0, 1.0}, {1.0}), std::invalid_argument);
  CHECK_NOTHROW(Rect({0.5}, {0.5}));
}
