#include "orthodisk/katz_tao.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace orthodisk::katz_tao {
namespace {

using CountGrid = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Bins points on an m x m grid of cell size h anchored at `origin`; points on
// the far edge fall into the last cell.
CountGrid bin(const PointMatrix& pts, const Point& origin, double h, Eigen::Index m) {
  CountGrid grid = CountGrid::Zero(m, m);
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    const Point rel = (pts.col(i) - origin) / h;
    const auto ix = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(rel.x())), 0, m - 1);
    const auto iy = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(rel.y())), 0, m - 1);
    ++grid(ix, iy);
  }
  return grid;
}

// Sums of every k x k block; entry (i, j) covers cells [i, i+k) x [j, j+k).
CountGrid block_sums(const CountGrid& grid, Eigen::Index k) {
  const Eigen::Index m = grid.rows();
  CountGrid prefix = CountGrid::Zero(m + 1, m + 1);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      prefix(i + 1, j + 1) = grid(i, j) + prefix(i, j + 1) + prefix(i + 1, j) - prefix(i, j);
  const Eigen::Index p = m - k + 1;
  return prefix.bottomRightCorner(p, p) - prefix.block(0, k, p, p) - prefix.block(k, 0, p, p) +
         prefix.topLeftCorner(p, p);
}

int dyadic_depth(double ratio) {
  // ceil(log2(ratio)) with a guard against log2 rounding on exact powers of two.
  return std::max(0, static_cast<int>(std::ceil(std::log2(ratio) - 1e-12)));
}

}  // namespace

PointMatrix points_in(const PointSet& a, const SquareSpec& q) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (q.contains(a[i])) keep.push_back(i);
  PointMatrix out(2, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = a[keep[k]];
  return out;
}

Certification certify(const PointSet& a, const SquareSpec& q, double delta, double s, double C) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("certify: delta must lie in (0, 1)");
  if (!(s >= 0.0 && s <= 2.0)) throw InvalidArgument("certify: s must lie in [0, 2]");
  if (!(C > 0.0)) throw InvalidArgument("certify: C must be positive");
  if (!(q.side > 0.0)) throw InvalidArgument("certify: square side must be positive");
  const PointMatrix pts = points_in(a, q);
  if (pts.cols() == 0) throw InsufficientPoints("certify: A cap Q is empty");
  const double total = static_cast<double>(pts.cols());

  Certification cert{delta, s, C, true, {}};
  cert.worst.observed_ratio = -1.0;
  const int depth = dyadic_depth(1.0 / delta);
  for (int j = 0; j <= depth; ++j) {
    const double u = std::ldexp(q.side, -j);
    const Eigen::Index m = Eigen::Index{2} << j;
    const CountGrid sums = block_sums(bin(pts, q.corner, 0.5 * u, m), 2);
    const double scale = std::pow(2.0, j * s) / total;

    Violation best;
    best.observed_ratio = -1.0;
    for (Eigen::Index ix = 0; ix < sums.rows(); ++ix) {
      for (Eigen::Index iy = 0; iy < sums.cols(); ++iy) {
        const double ratio = static_cast<double>(sums(ix, iy)) * scale;
        if (ratio > best.observed_ratio) {
          best.observed_ratio = ratio;
          best.subsquare = {q.corner + Point(ix * 0.5 * u, iy * 0.5 * u), u};
        }
      }
    }
    if (best.observed_ratio >= cert.worst.observed_ratio) cert.worst = best;
  }
  cert.ok = cert.worst.observed_ratio <= C;
  return cert;
}

double riesz_energy(const PointSet& a, double delta, double s) {
  return riesz_energy(a.coords(), delta, s);
}

BestSquare best_square(const PointSet& a, double u, double eps) {
  if (a.empty()) throw InsufficientPoints("best_square: empty point set");
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("best_square: u must lie in (0, 1)");
  if (!(eps >= 0.0)) throw InvalidArgument("best_square: eps must be >= 0");
  const double R = a.scale();
  const Point origin(-R, -R);
  // Largest j with 2R 2^-j >= uR.
  const int depth = static_cast<int>(std::floor(std::log2(2.0 / u) + 1e-12));
  if (depth > 12) throw InvalidArgument("best_square: u too small for the square grid");

  BestSquare best;
  best.objective = -1.0;
  for (int j = 0; j <= depth; ++j) {
    const double w = std::ldexp(2.0 * R, -j);
    const Eigen::Index m = Eigen::Index{4} << j;
    const CountGrid sums = block_sums(bin(a.coords(), origin, 0.25 * w, m), 4);
    const double weight = std::pow(w, -1.0 - eps);
    for (Eigen::Index ix = 0; ix < sums.rows(); ++ix) {
      for (Eigen::Index iy = 0; iy < sums.cols(); ++iy) {
        const double obj = static_cast<double>(sums(ix, iy)) * weight;
        if (obj > best.objective) {
          best.objective = obj;
          best.count = sums(ix, iy);
          best.square = {origin + Point(ix * 0.25 * w, iy * 0.25 * w), w};
        }
      }
    }
  }
  best.claimed_delta = u * R / best.square.side;
  return best;
}

std::vector<ScaleCount> dimension_profile(const PointSet& a, int num_scales) {
  if (a.empty()) throw InsufficientPoints("dimension_profile: empty point set");
  if (num_scales < 1 || num_scales > 30)
    throw InvalidArgument("dimension_profile: num_scales must lie in [1, 30]");
  const double R = a.scale();
  std::vector<ScaleCount> out;
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(a.size()));
  for (int j = 0; j <= num_scales; ++j) {
    const double w = std::ldexp(2.0 * R, -j);
    const std::int64_t m = std::int64_t{1} << j;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const auto ix = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((a[i].x() + R) / w)), 0, m - 1);
      const auto iy = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((a[i].y() + R) / w)), 0, m - 1);
      keys[static_cast<std::size_t>(i)] = (static_cast<std::uint64_t>(ix) << 32) | static_cast<std::uint64_t>(iy);
    }
    std::sort(keys.begin(), keys.end());
    const auto count = static_cast<Eigen::Index>(std::unique(keys.begin(), keys.end()) - keys.begin());
    ScaleCount sc{w, count, 0.0};
    if (!out.empty())
      sc.slope = std::log2(static_cast<double>(count) / static_cast<double>(out.back().count));
    out.push_back(sc);
    keys.assign(static_cast<std::size_t>(a.size()), 0);
  }
  return out;
}

PointSet rescale_to_unit(const PointSet& a, const SquareSpec& q) {
  PointMatrix pts = points_in(a, q);
  pts = (pts.colwise() - q.corner) / q.side;
  // Points a hair below 1 can round up to exactly 1 after division.
  pts = pts.cwiseMin(std::nextafter(1.0, 0.0));
  return PointSet(std::move(pts), 1.0);
}

}  // namespace orthodisk::katz_tao
