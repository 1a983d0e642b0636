#include <gtest/gtest.h>

#include <map>
#include <random>

#include "mobco/catalog.hpp"
#include "mobco/codesign.hpp"
#include "mobco/errors.hpp"
#include "mobco/mobility.hpp"
#include "oracles.hpp"

using namespace mobco::codesign;
using mobco::poset::Axis;
using mobco::poset::ExtNonNeg;
using namespace mobco::testing;

namespace {

Space one(const std::string& name, const std::string& unit = "u") {
  return Space(std::vector<Axis>{{name, unit}});
}

DesignProblem av_table(const std::string& scenario) {
  const auto file = mobco::catalog::load_catalog(data_dir() + "/vehicles.catalog.json");
  return mobco::mobility::av_problem(mobco::catalog::av_catalog(file, scenario));
}

std::vector<std::pair<Point, Point>> ordered_pairs(const std::vector<double>& values) {
  std::vector<std::pair<Point, Point>> out;
  for (double a : values)
    for (double b : values)
      if (a <= b) out.push_back({Point{a}, Point{b}});
  return out;
}

}  // namespace

TEST(CatalogQuery, ShippedS1At20) {
  const auto r = av_table("S1").query(Point{20});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].resources, (Point{47000, 0.084}));
}

TEST(CatalogQuery, ShippedS2At33UsesThe35Entry) {
  const auto r = av_table("S2-2020").query(Point{33});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].resources[0].value(), 122000.0);
  EXPECT_EQ(r[0].resources[1].value(), 0.084);
  EXPECT_EQ(r[0].provenance.at(0).implementation, "S2-2020@35mph");
}

TEST(CatalogQuery, ShippedS2At55IsInfeasible) {
  EXPECT_TRUE(av_table("S2-2020").query(Point{55}).empty());
}

TEST(CatalogQuery, TiesKeepEarliestAndRecordOthers) {
  const auto dp = DesignProblem::catalog(
      "t", one("f"), one("r"),
      {{"first", Point{5}, Point{1}, {}}, {"second", Point{6}, Point{1}, {}},
       {"worse", Point{7}, Point{2}, {}}});
  const auto r = dp.query(Point{4});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].provenance.at(0).implementation, "first");
  ASSERT_EQ(r[0].ties.size(), 1u);
  EXPECT_EQ(r[0].ties[0].at(0).implementation, "second");
}

TEST(CatalogQuery, WrongArityThrows) {
  EXPECT_THROW(av_table("S1").query(Point{20, 1}), mobco::DimensionError);
}

TEST(CatalogQuery, TopFunctionalityIsInfeasible) {
  EXPECT_TRUE(av_table("S1").query(Point(std::vector{ExtNonNeg::top()})).empty());
}

TEST(CatalogQuery, ResultsAreAntichainsAndMonotone) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 200; ++k) {
    const auto dp = random_catalog(rng, "x", 2, 2, 10);
    const Point f1 = random_query(rng, 2), f2 = random_query(rng, 2);
    for (const auto& q : {f1, f2}) {
      const auto r = points_of(dp.query(q));
      EXPECT_EQ(r, brute_pareto(r));
    }
    if (mobco::poset::leq(f1, f2)) EXPECT_TRUE(check_monotone(dp, {{f1, f2}}).ok());
  }
}

TEST(Series, Example) {
  const auto dp1 = DesignProblem::catalog(
      "dp1", one("f"), one("x"), {{"a1", Point{1}, Point{1}, {}}, {"a2", Point{1}, Point{2}, {}}});
  const auto dp2 = DesignProblem::catalog(
      "dp2", one("x"), one("r"), {{"to10", Point{1}, Point{10}, {}}, {"to5", Point{2}, Point{5}, {}}});
  const auto r = series(dp1, dp2).query(Point{1});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].resources, Point{5});
  // to5 provides 2 >= 1, so a1 already reaches 5 and a2 (x = 2) is dominated in dp1.
  auto chain = [](const Provenance& p) {
    std::vector<std::string> ids;
    for (const auto& s : p) ids.push_back(s.implementation);
    return ids;
  };
  using Ids = std::vector<std::string>;
  EXPECT_EQ(chain(r[0].provenance), (Ids{"a1", "to5"}));
  EXPECT_TRUE(r[0].ties.empty());
}

TEST(Series, InfeasibleSecondStage) {
  const auto dp1 = DesignProblem::catalog("dp1", one("f"), one("x"), {{"a", Point{1}, Point{3}, {}}});
  const auto dp2 = DesignProblem::catalog("dp2", one("x"), one("r"), {{"b", Point{2}, Point{1}, {}}});
  EXPECT_TRUE(series(dp1, dp2).query(Point{0}).empty());
}

TEST(Series, UnitMismatchThrows) {
  const auto dp1 = DesignProblem::catalog("dp1", one("f"), one("x", "usd"), {});
  const auto dp2 = DesignProblem::catalog("dp2", one("x", "mph"), one("r"), {});
  EXPECT_THROW(series(dp1, dp2), mobco::CompositionError);
}

TEST(Series, MatchesEnumeration) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 200; ++k) {
    const auto dp1 = random_catalog(rng, "p", 1, 2, 1 + k % 8);
    const auto dp2 = random_catalog(rng, "q", 2, 2, 1 + (k / 8) % 8);
    const Point f = random_query(rng, 1);
    EXPECT_EQ(points_of(series(dp1, dp2).query(f)), brute_series(dp1, dp2, f));
  }
}

TEST(Parallel, Examples) {
  const auto h1 = DesignProblem::catalog("h1", one("f"), one("r"), {{"a", Point{0}, Point{1}, {}}});
  const auto h2 = DesignProblem::catalog("h2", one("g"), one("s"), {{"b", Point{0}, Point{2}, {}}});
  EXPECT_EQ(points_of(parallel(h1, h2).query(Point{0, 0})), (std::vector<Point>{{1, 2}}));

  const Space two(std::vector<Axis>{{"r0", "u"}, {"r1", "u"}});
  const auto h3 = DesignProblem::catalog(
      "h3", one("f"), two, {{"a", Point{0}, Point{1, 4}, {}}, {"b", Point{0}, Point{2, 3}, {}}});
  const auto h4 = DesignProblem::catalog("h4", one("g"), one("s"), {{"c", Point{0}, Point{5}, {}}});
  EXPECT_EQ(points_of(parallel(h3, h4).query(Point{0, 0})),
            (std::vector<Point>{{1, 4, 5}, {2, 3, 5}}));
}

TEST(Parallel, MatchesEnumeration) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const auto dp1 = random_catalog(rng, "p", 1, 2, 1 + k % 10);
    const auto dp2 = random_catalog(rng, "q", 2, 1, 1 + (k / 10) % 10);
    const Point f = random_query(rng, 3);
    EXPECT_EQ(points_of(parallel(dp1, dp2).query(f)), brute_parallel(dp1, dp2, f));
  }
}

TEST(Diagram, SingleNodeEqualsQuery) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 50; ++k) {
    const auto dp = random_catalog(rng, "n", 1, 2, 8);
    DiagramBuilder b;
    b.add(dp).source({"n", "f0"}).sink({"n", "r0"}).sink({"n", "r1"});
    const Point f = random_query(rng, 1);
    EXPECT_EQ(points_of(solve_diagram(b.build(), f)), points_of(dp.query(f)));
  }
}

TEST(Diagram, ChainEqualsSeries) {
  std::mt19937_64 rng(25);
  for (int k = 0; k < 50; ++k) {
    const auto dp1 = random_catalog(rng, "p", 1, 1, 8);
    const auto dp2 = random_catalog(rng, "q", 1, 2, 8);
    DiagramBuilder b;
    b.add(dp1).add(dp2).connect({"p", "r0"}, {"q", "f0"});
    b.source({"p", "f0"}).sink({"q", "r0"}).sink({"q", "r1"});
    const Point f = random_query(rng, 1);
    EXPECT_EQ(points_of(solve_diagram(b.build(), f)), points_of(series(dp1, dp2).query(f)));
  }
}

TEST(Diagram, FanOutMatchesEnumerationAndReplays) {
  std::mt19937_64 rng(26);
  for (int k = 0; k < 200; ++k) {
    const Triple t = random_triple(rng);
    const auto d = triple_diagram(t);
    const Point f = random_query(rng, 2);
    const auto records = solve_diagram(d, f);
    ASSERT_EQ(points_of(records), brute_triple(t, f));
    for (const auto& rec : records) {
      const auto again = replay(d, f, rec.per_node);
      ASSERT_TRUE(again.has_value());
      EXPECT_EQ(*again, rec.resources);
    }
  }
}

TEST(Diagram, ReplayRejectsUnknownImplementation) {
  std::mt19937_64 rng(27);
  const Triple t = random_triple(rng);
  const auto d = triple_diagram(t);
  const Point f{0, 0};
  auto records = solve_diagram(d, f);
  if (records.empty()) GTEST_SKIP();
  records[0].per_node[0][0].implementation = "missing";
  EXPECT_FALSE(replay(d, f, records[0].per_node).has_value());
}

TEST(Diagram, BuildErrors) {
  std::mt19937_64 rng(28);
  const auto p = random_catalog(rng, "p", 1, 1, 2);
  const auto q = random_catalog(rng, "q", 1, 1, 2);
  {
    DiagramBuilder b;
    b.add(p).add(q).connect({"p", "r0"}, {"q", "f0"}).connect({"q", "r0"}, {"p", "f0"});
    b.sink({"q", "r0"});
    EXPECT_THROW(b.build(), mobco::CompositionError);
  }
  {
    DiagramBuilder b;
    b.add(p).add(q).source({"p", "f0"}).sink({"p", "r0"});
    EXPECT_THROW(b.build(), mobco::CompositionError);  // q.f0 has no input
  }
  {
    DiagramBuilder b;
    b.add(p).source({"p", "nope"}).sink({"p", "r0"});
    EXPECT_THROW(b.build(), mobco::CompositionError);
  }
}

TEST(Monotone, ShippedAvCatalogsPass) {
  const std::vector<double> speeds{0, 20, 22, 25, 30, 33, 35, 40, 45, 50, 55};
  for (const char* s : {"S1", "S2-2020", "S2-2025", "S3", "S4", "S5-2020", "S5-2025"}) {
    const auto report = check_monotone(av_table(s), ordered_pairs(speeds));
    EXPECT_TRUE(report.ok()) << s;
    EXPECT_GT(report.pairs_checked, 0u);
  }
}

TEST(Monotone, CorruptedTableIsReported) {
  // Exact-speed lookup: cheaper at 25 mph than at 20 mph.
  const std::map<double, double> table{{20, 50000}, {25, 40000}};
  const auto dp = DesignProblem::computed(
      "corrupt", one("speed", "mph"), one("cost", "usd"), [table](const Point& f) {
        std::vector<Choice> out;
        auto it = table.find(f[0].value());
        if (it != table.end()) out.push_back({Point{it->second}, {}, {}});
        return out;
      });
  const auto report = check_monotone(dp, {{Point{20}, Point{25}}});
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].resources, Point{40000});
  EXPECT_THROW(check_monotone(dp, {{Point{25}, Point{20}}}), std::invalid_argument);
}

TEST(Computed, GridMakesQueryMonotone) {
  // Raw hook is not monotone; the grid closure is.
  const auto dp = DesignProblem::computed(
      "g", one("f"), one("r"),
      [](const Point& f) {
        return std::vector<Choice>{{Point{f[0].value() == 1.0 ? 5.0 : 1.0}, {}, {}}};
      },
      std::vector<Point>{Point{0}, Point{1}, Point{2}});
  EXPECT_EQ(points_of(dp.query(Point{1})), (std::vector<Point>{{1}}));
  EXPECT_EQ(points_of(dp.query(Point{0.5})), (std::vector<Point>{{1}}));
  EXPECT_TRUE(dp.query(Point{3}).empty());
  EXPECT_TRUE(check_monotone(dp, ordered_pairs({0, 0.5, 1, 1.5, 2, 3})).ok());
}
