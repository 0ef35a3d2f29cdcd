#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "orthodisk/geometry.hpp"
#include "orthodisk/katz_tao.hpp"

namespace orthodisk::tubes {

/// Angle step is kAngleStep * delta.
inline constexpr double kAngleStep = 0.5;
/// Offsets within one direction are spaced kOffsetStep * delta.
inline constexpr double kOffsetStep = 0.5;

/// Signed coordinate of p along the unit normal (-sin theta, cos theta) of a
/// spine inclined at theta. Tubes at theta are intervals of this coordinate.
template <typename Scalar>
Scalar normal_coordinate(const Point2<Scalar>& p, Scalar theta) {
  return -p.x() * std::sin(theta) + p.y() * std::cos(theta);
}

/// delta-neighbourhood of a spine {p : normal_coordinate(p, theta) = offset}.
/// Membership is half-open: offset - delta/2 <= coordinate < offset + delta/2.
struct Tube {
  double theta = 0.0;
  double offset = 0.0;
  double width = 0.0;
  int angle_index = 0;
  int offset_index = 0;

  double lower() const { return offset - 0.5 * width; }
  double upper() const { return offset + 0.5 * width; }
  bool contains_coordinate(double c) const { return c >= lower() && c < upper(); }
  bool contains(const Point& p) const { return contains_coordinate(normal_coordinate(p, theta)); }
};

/// The family T0: for each angle n * delta / 2 in [0, pi), tubes whose
/// offsets step delta / 2 across the projection of the unit square.
class TubeFamily {
 public:
  explicit TubeFamily(double delta);

  double delta() const { return delta_; }
  double angle_step() const { return kAngleStep * delta_; }
  double offset_step() const { return kOffsetStep * delta_; }
  int num_angles() const { return static_cast<int>(first_offset_.size()); }
  int num_offsets(int angle) const { return offset_count_[static_cast<std::size_t>(angle)]; }
  std::size_t size() const { return total_; }

  double theta(int angle) const { return angle * angle_step(); }
  Tube tube(int angle, int offset_index) const;
  std::vector<Tube> tubes() const;

  /// Indices k whose tubes at this angle contain the coordinate c.
  std::pair<int, int> offset_range(int angle, double c_lo, double c_hi) const;

 private:
  double delta_;
  std::vector<double> first_offset_;
  std::vector<int> offset_count_;
  std::size_t total_ = 0;
};

/// Throws InvalidArgument unless delta lies in (0, 0.5).
TubeFamily build_family(double delta);

/// Indices of the points of A inside T.
std::vector<Eigen::Index> tube_points(const PointSet& a, const Tube& t);

/// First tube (angle-major order) containing the whole segment [p, q], if any.
std::optional<Tube> covering_tube(const TubeFamily& family, const Point& p, const Point& q);

/// Number of family tubes containing both points.
long tubes_containing(const TubeFamily& family, const Point& a, const Point& b);

/// Truncated Riesz energy (ordered pairs, diagonal included) of the scalar
/// projections normal_coordinate(a, theta).
double projection_energy(const PointSet& a, double theta, double delta, double t);

struct TubeStat {
  Tube tube;
  Eigen::Index count = 0;
  double energy = 0.0;
};

struct PropositionResult {
  std::vector<TubeStat> tubes;  // qualifying tubes, (angle, offset) order
  Eigen::Index count = 0;
  double threshold = 0.0;       // delta^(-2 + 2 eps')
  double window_lo = 0.0, window_hi = 0.0;
  std::size_t family_size = 0;
};

/// Scans the whole family for tubes with |A cap T| in
/// [delta^(1+eps') |A|, delta^(1-2eps') |A|] and
/// I_delta^(eps-eps')(A cap T) <= K delta^(-4 eps') |A cap T|^2.
PropositionResult proposition_tubes(const PointSet& a, double delta, double eps, double eps_prime,
                                    double K = 100.0);

/// Every family tube meeting A, with its count and I_delta^s energy.
std::vector<TubeStat> tube_report(const PointSet& a, double delta, double s);

enum class TriplePath { proof, fallback, none };

struct TripleResult {
  TriplePath path = TriplePath::none;
  std::array<Point, 3> points{Point::Zero(), Point::Zero(), Point::Zero()};
  double strip_width = 0.0;
  double min_sep = 0.0;        // achieved min pairwise distance
  double required_sep = 0.0;   // delta^eps * w / 8
  bool delta_warning = false;  // delta > 2^-8
  bool found() const { return path != TriplePath::none; }
};

/// Looks for three points of A cap Q in one family tube of the rescaled
/// square with pairwise distances >= delta^eps * w / 8. The qualifying tubes
/// of proposition_tubes (eps' = eps^2 / 10, K = 100) are tried first; if none
/// yields a triple every family tube is scanned.
TripleResult find_separated_triple(const PointSet& a, const katz_tao::SquareSpec& q, double delta,
                                   double eps);

}  // namespace orthodisk::tubes
