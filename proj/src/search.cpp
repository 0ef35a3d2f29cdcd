#include "orthodisk/search.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>

#include "orthodisk/parallel.hpp"

namespace orthodisk::search {
namespace {

// Candidates closer than this are the same point.
constexpr double kMergeDistance = 1e-9;

bool fits_box(const std::vector<Point>& pts, const Point& extra, double R) {
  Point lo = extra, hi = extra;
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return ((hi - lo).array() <= 2.0 * R * (1.0 + 1e-12)).all();
}

void validate(const SearchConfig& config) {
  if (!(config.R > 0.0)) throw InvalidArgument("search: R must be positive");
  if (config.max_nodes < 1) throw InvalidArgument("search: node budget must be >= 1");
  if (config.max_points < 2) throw InvalidArgument("search: max_points must be >= 2");
  if (std::abs(config.tol - config.alphabet.tol()) > 1e-15)
    throw InvalidArgument("search: tol must match the alphabet tolerance");
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  return 0.5 * (upper + *std::max_element(v.begin(), mid));
}

struct SeedOutcome {
  std::vector<Point> best;
  long nodes = 0;
  bool aborted = false;
  std::vector<double> fourth_residuals;
};

class CliqueSearch {
 public:
  CliqueSearch(const std::vector<std::vector<char>>& compat, int max_extra, long budget)
      : compat_(compat), max_extra_(max_extra), budget_(budget) {}

  void run() {
    std::vector<int> all(compat_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<int> current;
    dfs(current, all);
  }

  const std::vector<int>& best() const { return best_; }
  long nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  void dfs(std::vector<int>& current, const std::vector<int>& cand) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      nodes_ = budget_;
      aborted_ = true;
      return;
    }
    if (current.size() > best_.size()) best_ = current;
    if (static_cast<int>(current.size()) >= max_extra_) return;
    for (std::size_t pos = 0; pos < cand.size(); ++pos) {
      if (current.size() + (cand.size() - pos) <= best_.size()) return;
      const int pick = cand[pos];
      std::vector<int> next;
      for (std::size_t k = pos + 1; k < cand.size(); ++k)
        if (compat_[static_cast<std::size_t>(pick)][static_cast<std::size_t>(cand[k])]) next.push_back(cand[k]);
      current.push_back(pick);
      dfs(current, next);
      current.pop_back();
      if (aborted_) return;
    }
  }

  const std::vector<std::vector<char>>& compat_;
  int max_extra_;
  long budget_;
  long nodes_ = 0;
  bool aborted_ = false;
  std::vector<int> best_;
};

SeedOutcome search_seed(const SearchConfig& config, double d, double d_max, long budget) {
  SeedOutcome out;
  const std::vector<Point> seed{Point(0, 0), Point(d, 0)};
  const auto cand = extend_candidates(seed, config, d_max);
  const std::size_t n = cand.size();
  std::vector<std::vector<char>> compat(n, std::vector<char>(n, 0));
  out.fourth_residuals.assign(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = (cand[i] - cand[j]).norm();
      // Farther apart than the box diagonal: never both in one configuration.
      if (dist <= kMergeDistance || dist > d_max) continue;
      const auto m = config.alphabet.nearest(dist);
      out.fourth_residuals[i] = std::min(out.fourth_residuals[i], m.residual);
      out.fourth_residuals[j] = std::min(out.fourth_residuals[j], m.residual);
      if (m.inside && fits_box({seed[0], seed[1], cand[i]}, cand[j], config.R))
        compat[i][j] = compat[j][i] = 1;
    }
  }
  std::erase_if(out.fourth_residuals, [](double v) { return !std::isfinite(v); });

  CliqueSearch clique(compat, config.max_points - 2, budget);
  clique.run();
  out.nodes = clique.nodes();
  out.aborted = clique.aborted();
  out.best = seed;
  for (int idx : clique.best()) out.best.push_back(cand[static_cast<std::size_t>(idx)]);
  return out;
}

}  // namespace

std::vector<Point> extend_candidates(const std::vector<Point>& a, const SearchConfig& config,
                                     double d_max) {
  if (a.size() < 2) throw InsufficientPoints("extend_candidates needs at least 2 points");
  const auto radii = config.alphabet.values_upto(d_max);
  std::vector<Point> raw;
  for (double r0 : radii) {
    for (double r1 : radii) {
      for (const Point& p : circle_intersections(a[0], r0, a[1], r1)) {
        if (!fits_box(a, p, config.R)) continue;
        bool ok = true;
        for (const auto& q : a) {
          const double dist = (p - q).norm();
          if (dist <= kMergeDistance || !config.alphabet.contains(dist)) {
            ok = false;
            break;
          }
        }
        if (ok) raw.push_back(p);
      }
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const Point& p, const Point& q) { return p.x() != q.x() ? p.x() < q.x() : p.y() < q.y(); });
  std::vector<Point> out;
  for (const auto& p : raw) {
    const bool dup = std::any_of(out.rbegin(), out.rend(), [&](const Point& q) {
      return (p - q).norm() <= kMergeDistance;
    });
    if (!dup) out.push_back(p);
  }
  return out;
}

SearchResult search_max(const SearchConfig& config) {
  validate(config);
  const double d_max = 2.0 * std::numbers::sqrt2 * config.R;
  config.alphabet.values_upto(d_max);  // fail early when a Bessel table is too short
  const auto seeds = config.alphabet.values_upto(2.0 * config.R);

  SearchResult result{PointSet(std::vector<Point>{Point(0, 0)}, config.R), 1, {}, 0, true};
  if (seeds.empty()) return result;

  const long budget = std::max<long>(1, config.max_nodes / static_cast<long>(seeds.size()));
  std::vector<SeedOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { outcomes[i] = search_seed(config, seeds[i], d_max, budget); });

  std::vector<double> residuals;
  const std::vector<Point>* best = nullptr;
  for (const auto& o : outcomes) {
    result.nodes_explored += o.nodes;
    if (o.aborted) result.exhausted = false;
    if (!best || o.best.size() > best->size()) best = &o.best;
    residuals.insert(residuals.end(), o.fourth_residuals.begin(), o.fourth_residuals.end());
  }

  // Centre the bounding box so the configuration lies in [-R, R]^2.
  Point lo = (*best)[0], hi = (*best)[0];
  for (const auto& p : *best) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Point shift = -0.5 * (lo + hi);
  PointMatrix coords(2, static_cast<Eigen::Index>(best->size()));
  for (std::size_t i = 0; i < best->size(); ++i) coords.col(static_cast<Eigen::Index>(i)) = (*best)[i] + shift;
  coords = coords.cwiseMax(-config.R).cwiseMin(config.R);
  result.best = PointSet(std::move(coords), config.R);
  result.best_size = static_cast<int>(best->size());

  if (!residuals.empty()) {
    result.residual_stats.min = *std::min_element(residuals.begin(), residuals.end());
    result.residual_stats.median = median_of(residuals);
    result.residual_stats.samples = residuals.size();
  }

  if (result.best_size >= 2 && !check_distances(result.best, config.alphabet).pass)
    throw InternalConsistency("search produced a configuration failing the distance check");
  return result;
}

FourPointSummary four_point_scan(const SearchConfig& config, std::size_t num_triangles) {
  validate(config);
  const auto kind = config.alphabet.kind();
  if (kind != AlphabetKind::bessel && kind != AlphabetKind::shifted)
    throw InvalidArgument("four_point_scan needs a bessel or shifted alphabet");

  FourPointSummary out;
  out.histogram.assign(static_cast<std::size_t>(-kHistogramLowExponent), 0);
  if (num_triangles == 0) return out;

  const double d_max = 2.0 * std::numbers::sqrt2 * config.R;
  const auto sides = config.alphabet.values_upto(2.0 * config.R);
  const auto radii = config.alphabet.values_upto(d_max);
  if (sides.empty()) throw InvalidArgument("four_point_scan: no alphabet value below 2R");

  std::mt19937_64 rng(config.seed);
  auto draw = [&] { return sides[static_cast<std::size_t>(rng() % sides.size())]; };

  std::vector<double> minima;
  for (std::size_t t = 0; t < num_triangles; ++t) {
    double a = 0, b = 0, c = 0;
    bool valid = false;
    for (int attempt = 0; attempt < 10000 && !valid; ++attempt) {
      a = draw();
      b = draw();
      c = draw();
      valid = c < a + b - 1e-9 && a < b + c - 1e-9 && b < a + c - 1e-9;
    }
    if (!valid) continue;
    const Point p0(0, 0), p1(a, 0);
    const auto apex = circle_intersections(p0, b, p1, c);
    const Point p2 = apex.front();

    double best = std::numeric_limits<double>::infinity();
    for (double x : radii) {
      for (double y : radii) {
        for (const Point& q : circle_intersections(p0, x, p1, y)) {
          const double dist = (q - p2).norm();
          if (dist <= kMergeDistance || dist > d_max) continue;
          best = std::min(best, config.alphabet.nearest(dist).residual);
        }
      }
    }
    if (!std::isfinite(best)) continue;
    minima.push_back(best);
    const int decade = best > 0.0 ? static_cast<int>(std::floor(std::log10(best))) : -100;
    const int bin = std::clamp(decade - static_cast<int>(kHistogramLowExponent), 0,
                               static_cast<int>(out.histogram.size()) - 1);
    ++out.histogram[static_cast<std::size_t>(bin)];
    if (best <= config.tol) {
      ++out.hits;
      out.hit_triangles.push_back({a, b, c});
    }
  }
  out.triangles = minima.size();
  if (!minima.empty()) {
    out.min = *std::min_element(minima.begin(), minima.end());
    out.median = median_of(minima);
  }
  return out;
}

std::vector<std::array<double, 3>> collinear_scan(const DistanceAlphabet& alphabet, double d_max) {
  const auto values = alphabet.values_upto(d_max);
  std::vector<std::array<double, 3>> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i; j < values.size(); ++j) {
      const double sum = values[i] + values[j];
      if (sum > d_max + alphabet.tol()) break;
      const auto it = std::lower_bound(values.begin(), values.end(), sum);
      for (auto k : {it - values.begin() - 1, it - values.begin()}) {
        if (k < 0 || k >= static_cast<std::ptrdiff_t>(values.size())) continue;
        if (std::abs(sum - values[static_cast<std::size_t>(k)]) <= alphabet.tol())
          out.push_back({values[i], values[j], values[static_cast<std::size_t>(k)]});
      }
    }
  }
  return out;
}

}  // namespace orthodisk::search
