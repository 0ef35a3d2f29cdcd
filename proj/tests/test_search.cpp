#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "oracles.hpp"
#include "orthodisk/bessel.hpp"
#include "orthodisk/parallel.hpp"
#include "orthodisk/search.hpp"

using namespace orthodisk;
using namespace orthodisk::search;

namespace {

std::shared_ptr<const bessel::ZeroTable> table(int n_max) {
  return std::make_shared<const bessel::ZeroTable>(bessel::compute_zeros(n_max, 1e-13));
}

SearchConfig config(DistanceAlphabet alphabet, double R, int max_points = 64, long budget = 1'000'000) {
  SearchConfig c{.R = R, .alphabet = alphabet, .tol = alphabet.tol()};
  c.max_points = max_points;
  c.max_nodes = budget;
  return c;
}

bool collinear(const Point& a, const Point& b, const Point& c) {
  const Point u = b - a, v = c - a;
  return std::abs(u.x() * v.y() - u.y() * v.x()) < 1e-9;
}

}  // namespace

TEST(CircleIntersections, Examples) {
  const auto two = circle_intersections<double>(Point(0, 0), 5, Point(6, 0), 5);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(two[0].x(), 3, 1e-12);
  EXPECT_NEAR(two[0].y(), 4, 1e-12);
  EXPECT_NEAR(two[1].y(), -4, 1e-12);

  const auto tangent = circle_intersections<double>(Point(0, 0), 1, Point(2, 0), 1);
  ASSERT_EQ(tangent.size(), 1u);
  EXPECT_NEAR(tangent[0].x(), 1, 1e-12);
  EXPECT_NEAR(tangent[0].y(), 0, 1e-12);

  EXPECT_TRUE(circle_intersections<double>(Point(0, 0), 1, Point(3, 0), 1).empty());
  EXPECT_TRUE(circle_intersections<double>(Point(0, 0), 5, Point(1, 0), 1).empty());
  EXPECT_THROW(circle_intersections<double>(Point(1, 1), 1, Point(1, 1), 2), InvalidArgument);
}

TEST(CircleIntersections, PointsLieOnBothCircles) {
  for (double d1 : {0.7, 1.3, 2.9})
    for (double d2 : {0.5, 1.1, 2.2}) {
      const Point c1(0.3, -0.2), c2(1.1, 0.9);
      for (const auto& p : circle_intersections<double>(c1, d1, c2, d2)) {
        EXPECT_NEAR((p - c1).norm(), d1, 1e-12);
        EXPECT_NEAR((p - c2).norm(), d2, 1e-12);
      }
    }
}

TEST(CircleIntersections, LongDoubleInstantiation) {
  using P = Point2<long double>;
  const auto two = circle_intersections<long double>(P(0, 0), 5, P(6, 0), 5);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(static_cast<double>(two[0].y()), 4, 1e-15);
}

TEST(ExtendCandidates, IntegerRightTriangle) {
  const auto cfg = config(DistanceAlphabet::integers(1e-9), 5);
  const auto cands = extend_candidates({Point(0, 0), Point(3, 0)}, cfg, 10);
  // (0, 4) and (0, -4) complete a 3-4-5 triangle.
  EXPECT_NE(std::find_if(cands.begin(), cands.end(), [](const Point& p) { return (p - Point(0, 4)).norm() < 1e-9; }),
            cands.end());
  EXPECT_NE(std::find_if(cands.begin(), cands.end(), [](const Point& p) { return (p - Point(0, -4)).norm() < 1e-9; }),
            cands.end());
  for (const auto& p : cands) {
    EXPECT_NEAR(std::round(p.norm()), p.norm(), 1e-9);
    EXPECT_NEAR(std::round((p - Point(3, 0)).norm()), (p - Point(3, 0)).norm(), 1e-9);
  }
  EXPECT_TRUE(std::is_sorted(cands.begin(), cands.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  }));
}

TEST(ExtendCandidates, ChecksAllExistingPoints) {
  const auto cfg = config(DistanceAlphabet::integers(1e-9), 5);
  const auto cands = extend_candidates({Point(0, 0), Point(3, 0), Point(0, 4)}, cfg, 10);
  for (const auto& p : cands) EXPECT_NEAR(std::round((p - Point(0, 4)).norm()), (p - Point(0, 4)).norm(), 1e-9);
}

TEST(ExtendCandidates, RespectsBoxTranslate) {
  const auto cfg = config(DistanceAlphabet::integers(1e-9), 1);
  // Every point must fit with (0,0) and (1,0) inside a translate of [-1, 1]^2.
  for (const auto& p : extend_candidates({Point(0, 0), Point(1, 0)}, cfg, 3)) {
    EXPECT_LE(std::max(p.x(), 1.0) - std::min(p.x(), 0.0), 2 + 1e-12);
    EXPECT_LE(std::abs(p.y()), 2 + 1e-12);
  }
}

TEST(Search, IntegersCollinearRowReachesMaxPoints) {
  const auto res = search_max(config(DistanceAlphabet::integers(1e-9), 5, 11));
  EXPECT_EQ(res.best_size, 11);
  EXPECT_EQ(res.best.size(), 11);
  EXPECT_TRUE(check_distances(res.best, DistanceAlphabet::integers(1e-9)).pass);
}

TEST(Search, IntegersFindLongCollinearSet) {
  for (int N : {2, 3}) {
    const double R = N + 0.5;
    const auto res = search_max(config(DistanceAlphabet::integers(1e-9), R, 64, 200'000));
    EXPECT_GE(res.best_size, 2 * N + 1) << N;
    EXPECT_TRUE(check_distances(res.best, DistanceAlphabet::integers(1e-9)).pass);
  }
}

TEST(Search, ShiftedAlphabetHasNoCollinearTriple) {
  const auto shifted = DistanceAlphabet::shifted(1e-9);
  EXPECT_TRUE(collinear_scan(shifted, 20).empty());
  const auto res = search_max(config(shifted, 3, 64, 200'000));
  EXPECT_GE(res.best_size, 2);
  EXPECT_TRUE(check_distances(res.best, shifted).pass);
  for (Eigen::Index i = 0; i < res.best.size(); ++i)
    for (Eigen::Index j = i + 1; j < res.best.size(); ++j)
      for (Eigen::Index k = j + 1; k < res.best.size(); ++k)
        EXPECT_FALSE(collinear(res.best[i], res.best[j], res.best[k]));
}

TEST(Search, BesselSmallBoxIsExhaustive) {
  const auto bessel = DistanceAlphabet::bessel(table(20), 1e-9);
  const auto res = search_max(config(bessel, 1.0));
  EXPECT_TRUE(res.exhausted);
  EXPECT_GE(res.best_size, 3);
  EXPECT_TRUE(check_distances(res.best, bessel).pass);
}

TEST(Search, BesselTableSizedToBoxDiagonalSuffices) {
  const double R = 1.5, d_max = 2 * std::numbers::sqrt2 * R;
  const auto bessel = DistanceAlphabet::bessel(table(static_cast<int>(std::ceil(2 * d_max)) + 2), 1e-9);
  EXPECT_NO_THROW(search_max(config(bessel, R, 64, 20'000)));
}

TEST(Search, ResultFitsInBoxTranslate) {
  const auto res = search_max(config(DistanceAlphabet::integers(1e-9), 2.5, 64, 100'000));
  const auto& c = res.best.coords();
  EXPECT_LE(c.row(0).maxCoeff() - c.row(0).minCoeff(), 5 + 1e-9);
  EXPECT_LE(c.row(1).maxCoeff() - c.row(1).minCoeff(), 5 + 1e-9);
}

TEST(Search, DeterministicAcrossThreadCounts) {
  const auto bessel = DistanceAlphabet::bessel(table(20), 1e-9);
  set_default_threads(1);
  const auto one = search_max(config(bessel, 1.5, 64, 50'000));
  set_default_threads(4);
  const auto four = search_max(config(bessel, 1.5, 64, 50'000));
  set_default_threads(1);
  EXPECT_EQ(one.best_size, four.best_size);
  EXPECT_EQ(one.nodes_explored, four.nodes_explored);
  EXPECT_EQ(one.best.coords(), four.best.coords());
}

TEST(Search, SmallBudgetIsNotExhausted) {
  const auto res = search_max(config(DistanceAlphabet::integers(1e-9), 5, 64, 10));
  EXPECT_FALSE(res.exhausted);
  EXPECT_GE(res.best_size, 2);
}

TEST(Search, RejectsMismatchedTolerance) {
  auto cfg = config(DistanceAlphabet::integers(1e-9), 2);
  cfg.tol = 1e-6;
  EXPECT_THROW(search_max(cfg), InvalidArgument);
  auto small = config(DistanceAlphabet::integers(1e-9), 2);
  small.max_points = 1;
  EXPECT_THROW(search_max(small), InvalidArgument);
  EXPECT_THROW(search_max(config(DistanceAlphabet::integers(1e-9), 2, 64, 0)), InvalidArgument);
}

TEST(FourPointScan, BesselResidualsAreFarFromZero) {
  auto cfg = config(DistanceAlphabet::bessel(table(64), 1e-9), 5);
  cfg.seed = 1;
  const auto s = four_point_scan(cfg, 300);
  EXPECT_GT(s.triangles, 0u);
  EXPECT_EQ(s.hits, 0u);
  EXPECT_GT(s.min, 1e-9);
  EXPECT_GE(s.median, s.min);
  std::size_t total = 0;
  for (auto h : s.histogram) total += h;
  EXPECT_EQ(total, s.triangles);
}

TEST(FourPointScan, DeterministicInSeed) {
  auto cfg = config(DistanceAlphabet::bessel(table(64), 1e-9), 5);
  cfg.seed = 7;
  const auto a = four_point_scan(cfg, 100);
  const auto b = four_point_scan(cfg, 100);
  EXPECT_EQ(a.min, b.min);
  EXPECT_EQ(a.histogram, b.histogram);
}

TEST(FourPointScan, ZeroTrianglesGivesEmptySummary) {
  const auto s = four_point_scan(config(DistanceAlphabet::shifted(1e-9), 5), 0);
  EXPECT_EQ(s.triangles, 0u);
  EXPECT_EQ(s.hits, 0u);
}

TEST(FourPointScan, RejectsIntegerAlphabet) {
  EXPECT_THROW(four_point_scan(config(DistanceAlphabet::integers(1e-9), 5), 10), InvalidArgument);
}

TEST(CollinearScan, IntegersContainThreeFourSeven) {
  const auto triples = collinear_scan(DistanceAlphabet::integers(1e-9), 10);
  EXPECT_NE(std::find(triples.begin(), triples.end(), std::array<double, 3>{3, 4, 7}), triples.end());
  for (const auto& t : triples) {
    EXPECT_LE(t[0], t[1]);
    EXPECT_NEAR(t[0] + t[1], t[2], 1e-9);
  }
}

TEST(CollinearScan, BesselZerosAreSumFreeAtCoarseTolerance) {
  // Sums of two zeros stay at least about 0.1 away from every zero.
  const auto bessel = DistanceAlphabet::bessel(table(1000), 0.05);
  EXPECT_TRUE(collinear_scan(bessel, oracle::bessel_zero_n(1000)).empty());
}
