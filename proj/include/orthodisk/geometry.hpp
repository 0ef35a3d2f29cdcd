#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orthodisk/bessel.hpp"
#include "orthodisk/core.hpp"

namespace orthodisk {

/// Points closer than this are treated as duplicates.
inline constexpr double kDuplicateThreshold = 1e-12;

/// Finite planar configuration inside the box [-R, R]^2.
class PointSet {
 public:
  /// Throws InvalidArgument on non-finite coordinates, points outside the
  /// box, duplicates, or R <= 0.
  PointSet(PointMatrix coords, double scale);
  PointSet(const std::vector<Point>& points, double scale);

  /// Smallest power of two R with all coordinates in [-R, R].
  static double enclosing_scale(const PointMatrix& coords);
  static PointSet with_enclosing_scale(PointMatrix coords);

  Eigen::Index size() const { return coords_.cols(); }
  bool empty() const { return coords_.cols() == 0; }
  Point operator[](Eigen::Index i) const { return coords_.col(i); }
  const PointMatrix& coords() const { return coords_; }
  double scale() const { return scale_; }

 private:
  PointMatrix coords_;
  double scale_;
};

enum class AlphabetKind { bessel, integers, shifted, custom };

/// Admissible pairwise distances together with the matching tolerance.
class DistanceAlphabet {
 public:
  struct Match {
    int index = 0;        // 1-based position in the alphabet
    double value = 0.0;   // nearest admissible distance
    double residual = 0.0;
    bool inside = false;  // residual within tolerance
  };

  /// For Bessel alphabets the table's certified error of the matched zero is
  /// added to `tol` when deciding membership.
  static DistanceAlphabet bessel(std::shared_ptr<const bessel::ZeroTable> table, double tol);
  static DistanceAlphabet integers(double tol);
  /// Values n/2 + 1/8, n >= 1.
  static DistanceAlphabet shifted(double tol);
  static DistanceAlphabet custom(std::vector<double> values, double tol);

  AlphabetKind kind() const { return kind_; }
  double tol() const { return tol_; }
  std::string name() const;
  const bessel::ZeroTable* table() const { return table_.get(); }

  Match nearest(double d) const;
  bool contains(double d) const { return nearest(d).inside; }
  /// All values <= d_max in increasing order. Bessel alphabets throw
  /// OutOfRange if the table may be missing a value below d_max.
  std::vector<double> values_upto(double d_max) const;

 private:
  DistanceAlphabet(AlphabetKind kind, double tol) : kind_(kind), tol_(tol) {}
  void validate_tolerance(double min_gap) const;

  AlphabetKind kind_;
  double tol_;
  std::shared_ptr<const bessel::ZeroTable> table_;
  std::vector<double> values_;
};

/// All C(|A|, 2) pairwise distances, ascending with duplicates retained.
std::vector<double> distance_set(const PointSet& a);

struct DistanceReport {
  bool pass = false;
  double max_residual = 0.0;
  Eigen::Index worst_i = 0, worst_j = 0;
  double worst_distance = 0.0;
};

DistanceReport check_distances(const PointSet& a, const DistanceAlphabet& alphabet);

/// Width of the thinnest closed strip containing three points, via
/// 2 * area / longest side. Zero iff collinear.
template <typename Scalar>
Scalar min_strip_width(const Point2<Scalar>& p1, const Point2<Scalar>& p2,
                       const Point2<Scalar>& p3) {
  const Scalar d12 = (p2 - p1).norm();
  const Scalar d13 = (p3 - p1).norm();
  const Scalar d23 = (p3 - p2).norm();
  if (std::min({d12, d13, d23}) < Scalar(kDuplicateThreshold))
    throw InvalidArgument("min_strip_width: duplicate points");
  const Point2<Scalar> u = p2 - p1;
  const Point2<Scalar> v = p3 - p1;
  const Scalar cross = std::abs(u.x() * v.y() - u.y() * v.x());
  return cross / std::max({d12, d13, d23});
}

struct Lemma1Ratio {
  double ratio = 0.0;  // width / sqrt(L)
  double L = 0.0;      // minimum pairwise distance
  double width = 0.0;
};

Lemma1Ratio lemma1_ratio(const Point& p1, const Point& p2, const Point& p3);

struct Lemma2Ratio {
  double ratio = 0.0;  // |A| / t
  double t = 0.0;      // minimum pairwise distance
};

Lemma2Ratio lemma2_ratio(const PointSet& a);

/// CSV with header `x,y`, 17 significant digits. When no scale is given the
/// enclosing power-of-two scale is used.
void write_points_csv(std::ostream& out, const PointSet& a);
PointSet read_points_csv(std::istream& in, std::optional<double> scale = std::nullopt);

}  // namespace orthodisk
