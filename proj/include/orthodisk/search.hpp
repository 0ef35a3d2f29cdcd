#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "orthodisk/geometry.hpp"

namespace orthodisk::search {

/// Slack used to classify two circles as tangent or disjoint.
inline constexpr double kCircleSlack = 1e-12;

/// Intersections of |p - c1| = d1 and |p - c2| = d2: none, the tangent point,
/// or two points (left of c1 -> c2 first). Throws InvalidArgument when the
/// centres coincide.
template <typename Scalar>
std::vector<Point2<Scalar>> circle_intersections(const Point2<Scalar>& c1, Scalar d1,
                                                 const Point2<Scalar>& c2, Scalar d2) {
  const Point2<Scalar> delta = c2 - c1;
  const Scalar D = delta.norm();
  if (D < Scalar(kDuplicateThreshold)) throw InvalidArgument("circle_intersections: coincident centres");
  const Scalar slack = Scalar(kCircleSlack);
  if (D > d1 + d2 + slack || D < std::abs(d1 - d2) - slack) return {};
  const Point2<Scalar> e = delta / D;
  const Scalar along = (d1 * d1 - d2 * d2 + D * D) / (2 * D);
  const Point2<Scalar> base = c1 + along * e;
  const Scalar h2 = d1 * d1 - along * along;
  if (std::abs(D - (d1 + d2)) <= slack || std::abs(D - std::abs(d1 - d2)) <= slack || h2 <= 0)
    return {base};
  const Point2<Scalar> perp(-e.y(), e.x());
  const Scalar h = std::sqrt(h2);
  return {base + h * perp, base - h * perp};
}

struct SearchConfig {
  double R = 1.0;  // configurations must fit in a translate of [-R, R]^2
  DistanceAlphabet alphabet;
  double tol = 0.0;  // must equal alphabet.tol()
  int max_points = 64;
  long max_nodes = 1'000'000;
  std::uint64_t seed = 0;
};

struct ResidualStats {
  double min = 0.0;
  double median = 0.0;
  std::size_t samples = 0;
};

struct SearchResult {
  PointSet best;
  int best_size = 0;
  ResidualStats residual_stats;
  long nodes_explored = 0;
  bool exhausted = false;
};

/// Points p completing A with every |p - a| in the alphabet. Candidates come
/// from circles around the first two points of A with alphabet radii up to
/// d_max; A plus p must fit in a translate of [-R, R]^2. Sorted by x, then y.
std::vector<Point> extend_candidates(const std::vector<Point>& a, const SearchConfig& config,
                                     double d_max);

/// Branch-and-bound over configurations normalised to (0, 0), (d, 0) for each
/// alphabet value d <= 2R. With the seed pair fixed, admissible points are
/// the candidates of extend_candidates, and the search looks for the largest
/// mutually compatible subset. The node budget is split evenly over seeds;
/// `exhausted` is true only if no seed hit its share.
SearchResult search_max(const SearchConfig& config);

struct FourPointSummary {
  std::size_t triangles = 0;  // triangles with at least one candidate
  double min = 0.0;
  double median = 0.0;
  std::vector<std::size_t> histogram;  // decades [1e-16,1e-15), ..., [0.1, 1); first bin also holds < 1e-16
  std::size_t hits = 0;                // minima within tolerance
  std::vector<std::array<double, 3>> hit_triangles;
};

inline constexpr double kHistogramLowExponent = -16.0;

/// Samples alphabet triangles with sides <= 2R (deterministic in the seed)
/// and records, per triangle, the smallest residual of the fourth distance
/// over all candidates fixed by the other two. Requires a bessel or shifted
/// alphabet.
FourPointSummary four_point_scan(const SearchConfig& config, std::size_t num_triangles);

/// Alphabet triples d1 <= d2 with |d1 + d2 - d3| <= alphabet.tol(), all <= d_max.
std::vector<std::array<double, 3>> collinear_scan(const DistanceAlphabet& alphabet, double d_max);

}  // namespace orthodisk::search
