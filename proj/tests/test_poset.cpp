#include <gtest/gtest.h>

#include <random>

#include "mobco/errors.hpp"
#include "mobco/poset.hpp"
#include "oracles.hpp"

using namespace mobco::poset;
using mobco::testing::brute_pareto;
using mobco::testing::random_points;

namespace {

Point top_at(std::initializer_list<double> c, std::size_t i) {
  std::vector<ExtNonNeg> v;
  for (double x : c) v.push_back(ExtNonNeg::finite(x));
  v[i] = ExtNonNeg::top();
  return Point(std::move(v));
}

}  // namespace

TEST(ExtNonNeg, RejectsNegativeAndNan) {
  EXPECT_THROW(ExtNonNeg::finite(-1.0), std::invalid_argument);
  EXPECT_THROW(ExtNonNeg::finite(std::nan("")), std::invalid_argument);
  EXPECT_THROW((void)ExtNonNeg::top().value(), std::logic_error);
  EXPECT_TRUE(ExtNonNeg::finite(1e300) < ExtNonNeg::top());
}

TEST(Compare, Examples) {
  EXPECT_EQ(compare(Point{1, 2}, Point{2, 2}), Ordering::Less);
  EXPECT_EQ(compare(Point{1, 2}, Point{2, 1}), Ordering::Incomparable);
  EXPECT_EQ(compare(top_at({3, 0}, 1), Point{3, 5}), Ordering::Greater);
  EXPECT_EQ(compare(Point{1, 1}, Point{1, 1}), Ordering::Equal);
  EXPECT_THROW(compare(Point{1}, Point{1, 2}), mobco::DimensionError);
}

TEST(Compare, ToleranceMergesNearValues) {
  EXPECT_EQ(compare(Point{1.0, 2.0}, Point{1.0 + 1e-12, 2.0}), Ordering::Less);
  EXPECT_EQ(compare(Point{1.0, 2.0}, Point{1.0 + 1e-12, 2.0}, 1e-9), Ordering::Equal);
}

TEST(Compare, PartialOrderAxioms) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    auto p = random_points(rng, 3, 3);
    EXPECT_TRUE(leq(p[0], p[0]));
    if (leq(p[0], p[1]) && leq(p[1], p[0])) EXPECT_EQ(p[0], p[1]);
    if (leq(p[0], p[1]) && leq(p[1], p[2])) EXPECT_TRUE(leq(p[0], p[2]));
    EXPECT_EQ(compare(p[0], p[1]), opposite(compare(p[1], p[0])));
  }
}

TEST(ParetoMin, Examples) {
  const std::vector<Point> s{{1, 2}, {2, 1}, {2, 2}};
  EXPECT_EQ(pareto_min(2, s).points(), (std::vector<Point>{{1, 2}, {2, 1}}));
  EXPECT_TRUE(pareto_min(2, std::vector<Point>{}).empty());
}

TEST(ParetoMin, MatchesBruteForce) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 300; ++k) {
    const std::size_t dim = 2 + k % 3;
    const auto pts = random_points(rng, 1 + k % 120, dim);
    EXPECT_EQ(pareto_min(dim, pts).points(), brute_pareto(pts));
  }
}

TEST(ParetoMin, UniformCube) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(Point{u(rng), u(rng), u(rng)});
  EXPECT_EQ(pareto_min(3, pts).points(), brute_pareto(pts));
}

TEST(ParetoMin, IdempotentSubsetAndCovering) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const auto pts = random_points(rng, 60, 3);
    const Antichain once = pareto_min(3, pts);
    EXPECT_EQ(pareto_min(3, once.points()), once);
    for (const Point& p : once) EXPECT_NE(std::find(pts.begin(), pts.end(), p), pts.end());
    for (const Point& p : pts) EXPECT_TRUE(dominates(once, p));
    for (std::size_t i = 0; i < once.size(); ++i)
      for (std::size_t j = 0; j < once.size(); ++j)
        if (i != j) EXPECT_EQ(compare(once.points()[i], once.points()[j]), Ordering::Incomparable);
  }
}

TEST(ParetoMin, IndicesReportTies) {
  const std::vector<Point> s{{1, 1}, {0, 2}, {1, 1}, {3, 3}};
  const MinimalSet m = pareto_min_indices(s);
  ASSERT_EQ(m.kept, (std::vector<std::size_t>{1, 0}));
  EXPECT_TRUE(m.ties[0].empty());
  EXPECT_EQ(m.ties[1], (std::vector<std::size_t>{2}));
}

TEST(ParetoMin, DimensionMismatchThrows) {
  const std::vector<Point> s{{1, 1}, {1}};
  EXPECT_THROW(pareto_min(2, s), mobco::DimensionError);
}

TEST(UnionMin, Examples) {
  const std::vector<Point> a{{1, 2}}, b{{2, 1}}, c{{1, 1}}, d{{2, 2}};
  EXPECT_EQ(antichain_union_min(pareto_min(2, a), pareto_min(2, b)).points(),
            (std::vector<Point>{{1, 2}, {2, 1}}));
  EXPECT_EQ(antichain_union_min(pareto_min(2, c), pareto_min(2, d)).points(),
            (std::vector<Point>{{1, 1}}));
}

TEST(UnionMin, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto p = random_points(rng, 50, 3), q = random_points(rng, 50, 3);
    const Antichain a = pareto_min(3, p), b = pareto_min(3, q);
    std::vector<Point> both = a.points();
    both.insert(both.end(), b.begin(), b.end());
    EXPECT_EQ(antichain_union_min(a, b).points(), brute_pareto(both));
  }
}

TEST(Dominates, Examples) {
  const std::vector<Point> s{{1, 2}, {2, 1}};
  const Antichain a = pareto_min(2, s);
  EXPECT_TRUE(dominates(a, Point{2, 2}));
  EXPECT_FALSE(dominates(a, Point{0.5, 0.5}));
  EXPECT_FALSE(dominates(Antichain(2), Point{9, 9}));
}

TEST(Dominates, EquivalentToExistence) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 300; ++k) {
    const auto s = random_points(rng, 30, 2);
    const Antichain a = pareto_min(2, s);
    for (const Point& r : random_points(rng, 10, 2)) {
      bool exists = false;
      for (const Point& p : s) exists |= leq(p, r);
      EXPECT_EQ(dominates(a, r), exists);
    }
  }
}

TEST(Space, NaturalAxisRejectsFractions) {
  const Space s({{"n", "vehicles", AxisKind::Natural}, {"t", "s"}});
  EXPECT_NO_THROW(s.check(Point{3, 0.5}));
  EXPECT_THROW(s.check(Point{0.5, 3}), std::invalid_argument);
  EXPECT_THROW(s.check(Point{1}), mobco::DimensionError);
  EXPECT_EQ(s.index_of("t"), 1u);
  EXPECT_THROW((void)s.index_of("x"), std::out_of_range);
}
