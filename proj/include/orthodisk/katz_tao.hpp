#pragma once

#include <optional>
#include <vector>

#include "orthodisk/geometry.hpp"

namespace orthodisk::katz_tao {

/// Axis-aligned square [x, x + w) x [y, y + w).
struct SquareSpec {
  Point corner = Point::Zero();
  double side = 1.0;

  bool contains(const Point& p) const {
    return p.x() >= corner.x() && p.x() < corner.x() + side && p.y() >= corner.y() &&
           p.y() < corner.y() + side;
  }
};

struct Violation {
  SquareSpec subsquare;
  double observed_ratio = 0.0;  // (|A cap Q'| / |A cap Q|) * (w / u)^s
};

struct Certification {
  double delta = 0.0, s = 0.0, C = 0.0;
  bool ok = false;
  Violation worst;  // largest ratio seen, recorded even when ok
};

/// Points of A inside Q (half-open), in A's order.
PointMatrix points_in(const PointSet& a, const SquareSpec& q);

/// Checks |A cap Q'| <= C (u/w)^s |A cap Q| over dyadic sides
/// u = w 2^-j, j = 0..ceil(log2(1/delta)), translates on a u/2 grid inside Q.
/// Ties for the worst subsquare go to the smaller side, then smaller x, then
/// smaller y.
Certification certify(const PointSet& a, const SquareSpec& q, double delta, double s, double C);

/// Truncated Riesz energy sum_{a, a'} min(delta^-s, |a - a'|^-s) over ordered
/// pairs, diagonal included.
template <typename Derived>
double riesz_energy(const Eigen::MatrixBase<Derived>& coords, double delta, double s);

double riesz_energy(const PointSet& a, double delta, double s);

struct BestSquare {
  SquareSpec square;
  double claimed_delta = 0.0;  // uR / w
  Eigen::Index count = 0;
  double objective = 0.0;      // count * w^(-1-eps)
};

/// Maximises |A cap Q| w^(-1-eps) over squares of dyadic side w = 2R 2^-j
/// (down to uR) whose corners sit on a w/4 grid inside [-R, R]^2. Ties go to
/// larger w, then lexicographically smallest corner.
BestSquare best_square(const PointSet& a, double u, double eps);

struct ScaleCount {
  double scale = 0.0;
  Eigen::Index count = 0;
  double slope = 0.0;  // log2(count_j / count_{j-1}); 0 for j = 0
};

/// Occupied-cell counts of the w_j-grid anchored at (-R, -R) for
/// w_j = 2R 2^-j, j = 0..num_scales.
std::vector<ScaleCount> dimension_profile(const PointSet& a, int num_scales);

/// A cap Q mapped affinely onto [0, 1)^2 (R = 1).
PointSet rescale_to_unit(const PointSet& a, const SquareSpec& q);

}  // namespace orthodisk::katz_tao

#include "orthodisk/katz_tao_impl.hpp"
