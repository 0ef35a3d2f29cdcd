#include "orthodisk/tubes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "orthodisk/parallel.hpp"

namespace orthodisk::tubes {
namespace {

// Points of A sorted by normal coordinate at one angle.
struct SortedProjection {
  std::vector<double> coord;          // ascending
  std::vector<Eigen::Index> index;    // index[i] is the point with coord[i]

  SortedProjection(const PointMatrix& pts, double theta) {
    const Eigen::Index n = pts.cols();
    std::vector<double> raw(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      raw[static_cast<std::size_t>(i)] = normal_coordinate<double>(pts.col(i), theta);
    index.resize(raw.size());
    std::iota(index.begin(), index.end(), Eigen::Index{0});
    std::stable_sort(index.begin(), index.end(), [&](Eigen::Index a, Eigen::Index b) {
      return raw[static_cast<std::size_t>(a)] < raw[static_cast<std::size_t>(b)];
    });
    coord.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) coord[i] = raw[static_cast<std::size_t>(index[i])];
  }

  // [begin, end) positions inside the tube.
  std::pair<std::size_t, std::size_t> members(const Tube& t) const {
    const auto lo = std::lower_bound(coord.begin(), coord.end(), t.lower());
    const auto hi = std::lower_bound(lo, coord.end(), t.upper());
    return {static_cast<std::size_t>(lo - coord.begin()), static_cast<std::size_t>(hi - coord.begin())};
  }

  PointMatrix gather(const PointMatrix& pts, std::pair<std::size_t, std::size_t> range) const {
    PointMatrix out(2, static_cast<Eigen::Index>(range.second - range.first));
    for (std::size_t i = range.first; i < range.second; ++i)
      out.col(static_cast<Eigen::Index>(i - range.first)) = pts.col(index[i]);
    return out;
  }
};

// Picks the two extreme members along the spine and the member best separated
// from both. Members are near-collinear, so this maximises the minimum
// pairwise distance up to the tube width.
std::optional<std::array<Point, 3>> spread_triple(const PointMatrix& members, double theta,
                                                  double required) {
  if (members.cols() < 3) return std::nullopt;
  const Point dir(std::cos(theta), std::sin(theta));
  const Eigen::RowVectorXd along = dir.transpose() * members;
  Eigen::Index first = 0, last = 0;
  along.minCoeff(&first);
  along.maxCoeff(&last);
  const Point p1 = members.col(first), p3 = members.col(last);
  double best = -1.0;
  Eigen::Index mid = -1;
  for (Eigen::Index i = 0; i < members.cols(); ++i) {
    if (i == first || i == last) continue;
    const double sep = std::min((members.col(i) - p1).norm(), (members.col(i) - p3).norm());
    if (sep > best) {
      best = sep;
      mid = i;
    }
  }
  if (mid < 0) return std::nullopt;
  const Point p2 = members.col(mid);
  const double sep = std::min({(p1 - p2).norm(), (p1 - p3).norm(), (p2 - p3).norm()});
  if (sep < required) return std::nullopt;
  return std::array<Point, 3>{p1, p2, p3};
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw InvalidArgument("tube width delta must lie in (0, 0.5)");
}

}  // namespace

TubeFamily::TubeFamily(double delta) : delta_(delta) {
  check_delta(delta);
  const int angles = static_cast<int>(std::ceil(std::numbers::pi / angle_step() - 1e-12));
  first_offset_.resize(static_cast<std::size_t>(angles));
  offset_count_.resize(static_cast<std::size_t>(angles));
  const std::array<Point, 4> corners{Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)};
  for (int a = 0; a < angles; ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : corners) {
      const double v = normal_coordinate(c, theta(a));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    first_offset_[static_cast<std::size_t>(a)] = lo;
    const int count = static_cast<int>(std::ceil((hi - lo) / offset_step() - 1e-12)) + 1;
    offset_count_[static_cast<std::size_t>(a)] = count;
    total_ += static_cast<std::size_t>(count);
  }
}

Tube TubeFamily::tube(int angle, int offset_index) const {
  return {theta(angle), first_offset_[static_cast<std::size_t>(angle)] + offset_index * offset_step(),
          delta_, angle, offset_index};
}

std::vector<Tube> TubeFamily::tubes() const {
  std::vector<Tube> out;
  out.reserve(total_);
  for (int a = 0; a < num_angles(); ++a)
    for (int k = 0; k < num_offsets(a); ++k) out.push_back(tube(a, k));
  return out;
}

std::pair<int, int> TubeFamily::offset_range(int angle, double c_lo, double c_hi) const {
  // Candidates satisfy c_hi - delta/2 < offset <= c_lo + delta/2; confirm with the exact predicate.
  const double first = first_offset_[static_cast<std::size_t>(angle)];
  const int k0 = std::max(0, static_cast<int>(std::floor((c_hi - 0.5 * delta_ - first) / offset_step())) - 1);
  const int k1 = std::min(num_offsets(angle) - 1,
                          static_cast<int>(std::ceil((c_lo + 0.5 * delta_ - first) / offset_step())) + 1);
  int begin = -1, end = -1;
  for (int k = k0; k <= k1; ++k) {
    const Tube t = tube(angle, k);
    if (t.contains_coordinate(c_lo) && t.contains_coordinate(c_hi)) {
      if (begin < 0) begin = k;
      end = k + 1;
    }
  }
  if (begin < 0) return {0, 0};
  return {begin, end};
}

TubeFamily build_family(double delta) { return TubeFamily(delta); }

std::vector<Eigen::Index> tube_points(const PointSet& a, const Tube& t) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (t.contains(a[i])) out.push_back(i);
  return out;
}

std::optional<Tube> covering_tube(const TubeFamily& family, const Point& p, const Point& q) {
  for (int a = 0; a < family.num_angles(); ++a) {
    const double cp = normal_coordinate(p, family.theta(a));
    const double cq = normal_coordinate(q, family.theta(a));
    const auto [begin, end] = family.offset_range(a, std::min(cp, cq), std::max(cp, cq));
    if (end > begin) return family.tube(a, begin);
  }
  return std::nullopt;
}

long tubes_containing(const TubeFamily& family, const Point& a, const Point& b) {
  long total = 0;
  for (int k = 0; k < family.num_angles(); ++k) {
    const double ca = normal_coordinate(a, family.theta(k));
    const double cb = normal_coordinate(b, family.theta(k));
    const auto [begin, end] = family.offset_range(k, std::min(ca, cb), std::max(ca, cb));
    total += end - begin;
  }
  return total;
}

double projection_energy(const PointSet& a, double theta, double delta, double t) {
  if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("projection_energy: t must lie in (0, 1)");
  if (!(delta > 0.0)) throw InvalidArgument("projection_energy: delta must be positive");
  const SortedProjection proj(a.coords(), theta);
  const auto& c = proj.coord;
  const double cap = std::pow(delta, -t);
  const std::size_t n = c.size();
  std::vector<double> rows(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = c[j] - c[i];
      acc += gap <= delta ? cap : std::pow(gap, -t);
    }
    rows[i] = acc;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return 2.0 * total + static_cast<double>(n) * cap;
}

namespace {

// Applies `visit(tube, members)` to every family tube with at least
// `min_count` members, collecting the returned optionals in family order.
template <typename Visit>
std::vector<TubeStat> scan_family(const PointMatrix& pts, const TubeFamily& family,
                                  Eigen::Index min_count, Visit&& visit) {
  std::vector<std::vector<TubeStat>> per_angle(static_cast<std::size_t>(family.num_angles()));
  parallel_for(per_angle.size(), [&](std::size_t ai) {
    const int angle = static_cast<int>(ai);
    const SortedProjection proj(pts, family.theta(angle));
    for (int k = 0; k < family.num_offsets(angle); ++k) {
      const Tube t = family.tube(angle, k);
      const auto range = proj.members(t);
      const auto count = static_cast<Eigen::Index>(range.second - range.first);
      if (count < min_count) continue;
      if (auto stat = visit(t, count, [&] { return proj.gather(pts, range); }))
        per_angle[ai].push_back(*stat);
    }
  });
  std::vector<TubeStat> out;
  for (auto& v : per_angle) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace

PropositionResult proposition_tubes(const PointSet& a, double delta, double eps, double eps_prime,
                                    double K) {
  check_delta(delta);
  if (!(eps_prime < eps)) throw InvalidArgument("proposition_tubes: eps_prime must be < eps");
  if (!(eps_prime >= 0.0)) throw InvalidArgument("proposition_tubes: eps_prime must be >= 0");
  if (!(K > 0.0)) throw InvalidArgument("proposition_tubes: K must be positive");
  const TubeFamily family(delta);
  const double n = static_cast<double>(a.size());

  PropositionResult res;
  res.window_lo = std::pow(delta, 1.0 + eps_prime) * n;
  res.window_hi = std::pow(delta, 1.0 - 2.0 * eps_prime) * n;
  res.threshold = std::pow(delta, -2.0 + 2.0 * eps_prime);
  res.family_size = family.size();
  const double energy_scale = K * std::pow(delta, -4.0 * eps_prime);
  const double exponent = eps - eps_prime;

  res.tubes = scan_family(
      a.coords(), family, 1,
      [&](const Tube& t, Eigen::Index count, auto members) -> std::optional<TubeStat> {
        const double c = static_cast<double>(count);
        if (c < res.window_lo || c > res.window_hi) return std::nullopt;
        const double energy = katz_tao::riesz_energy(members(), delta, exponent);
        if (energy > energy_scale * c * c) return std::nullopt;
        return TubeStat{t, count, energy};
      });
  res.count = static_cast<Eigen::Index>(res.tubes.size());
  return res;
}

std::vector<TubeStat> tube_report(const PointSet& a, double delta, double s) {
  const TubeFamily family(delta);
  return scan_family(a.coords(), family, 1,
                     [&](const Tube& t, Eigen::Index count, auto members) -> std::optional<TubeStat> {
                       return TubeStat{t, count, katz_tao::riesz_energy(members(), delta, s)};
                     });
}

TripleResult find_separated_triple(const PointSet& a, const katz_tao::SquareSpec& q, double delta,
                                   double eps) {
  check_delta(delta);
  if (!(eps > 0.0)) throw InvalidArgument("find_separated_triple: eps must be positive");
  const PointSet unit = katz_tao::rescale_to_unit(a, q);
  if (unit.empty()) throw InsufficientPoints("find_separated_triple: A cap Q is empty");

  TripleResult res;
  res.delta_warning = delta > std::ldexp(1.0, -8);
  const double required_unit = std::pow(delta, eps) / 8.0;
  res.required_sep = required_unit * q.side;

  auto finish = [&](const std::array<Point, 3>& tri, TriplePath path) {
    for (std::size_t i = 0; i < 3; ++i) res.points[i] = q.corner + q.side * tri[i];
    res.path = path;
    res.strip_width = min_strip_width(res.points[0], res.points[1], res.points[2]);
    res.min_sep = std::min({(res.points[0] - res.points[1]).norm(),
                            (res.points[0] - res.points[2]).norm(),
                            (res.points[1] - res.points[2]).norm()});
    return res;
  };

  // Proof path: eps' = eps^2 / 10 and ball radius delta^(10 eps' / eps) = delta^eps.
  const double eps_prime = eps * eps / 10.0;
  const auto prop = proposition_tubes(unit, delta, eps, eps_prime, 100.0);
  for (const auto& stat : prop.tubes) {
    const auto idx = tube_points(unit, stat.tube);
    PointMatrix members(2, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) members.col(static_cast<Eigen::Index>(i)) = unit[idx[i]];
    if (auto tri = spread_triple(members, stat.tube.theta, required_unit))
      return finish(*tri, TriplePath::proof);
  }

  // Fallback: any family tube.
  const TubeFamily family(delta);
  std::optional<std::array<Point, 3>> found;
  const auto hits = scan_family(
      unit.coords(), family, 3,
      [&](const Tube& t, Eigen::Index count, auto members) -> std::optional<TubeStat> {
        if (spread_triple(members(), t.theta, required_unit)) return TubeStat{t, count, 0.0};
        return std::nullopt;
      });
  if (!hits.empty()) {
    const auto idx = tube_points(unit, hits.front().tube);
    PointMatrix members(2, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) members.col(static_cast<Eigen::Index>(i)) = unit[idx[i]];
    found = spread_triple(members, hits.front().tube.theta, required_unit);
  }
  if (found) return finish(*found, TriplePath::fallback);
  return res;
}

}  // namespace orthodisk::tubes
