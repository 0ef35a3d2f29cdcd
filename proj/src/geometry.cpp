#include "orthodisk/geometry.hpp"

#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace orthodisk {

PointSet::PointSet(PointMatrix coords, double scale) : coords_(std::move(coords)), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw InvalidArgument("scale R must be positive");
  if (!coords_.allFinite()) throw InvalidArgument("point coordinates must be finite");
  if (coords_.size() > 0 && coords_.cwiseAbs().maxCoeff() > scale_)
    throw InvalidArgument("point outside [-R, R]^2 with R = " + std::to_string(scale_));

  // Sweep in x order; only neighbours within the threshold in x can collide.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(coords_.cols()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return coords_(0, a) < coords_(0, b); });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (coords_(0, order[j]) - coords_(0, order[i]) >= kDuplicateThreshold) break;
      if ((coords_.col(order[j]) - coords_.col(order[i])).norm() < kDuplicateThreshold)
        throw InvalidArgument("duplicate points at index " + std::to_string(order[i]) + " and " +
                              std::to_string(order[j]));
    }
  }
}

PointSet::PointSet(const std::vector<Point>& points, double scale)
    : PointSet(
          [&] {
            PointMatrix m(2, static_cast<Eigen::Index>(points.size()));
            for (std::size_t i = 0; i < points.size(); ++i)
              m.col(static_cast<Eigen::Index>(i)) = points[i];
            return m;
          }(),
          scale) {}

double PointSet::enclosing_scale(const PointMatrix& coords) {
  const double extent = coords.size() > 0 ? coords.cwiseAbs().maxCoeff() : 0.0;
  if (!std::isfinite(extent)) throw InvalidArgument("point coordinates must be finite");
  double r = 1.0;
  while (r < extent) r *= 2.0;
  while (r / 2.0 >= extent && r / 2.0 > 0.0 && extent > 0.0) r /= 2.0;
  return r;
}

PointSet PointSet::with_enclosing_scale(PointMatrix coords) {
  const double r = enclosing_scale(coords);
  return PointSet(std::move(coords), r);
}

// ---------------------------------------------------------------------------

DistanceAlphabet DistanceAlphabet::bessel(std::shared_ptr<const bessel::ZeroTable> table,
                                          double tol) {
  if (!table || table->n_max() == 0) throw InvalidArgument("bessel alphabet needs a zero table");
  DistanceAlphabet a(AlphabetKind::bessel, tol);
  double gap = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= table->n_max(); ++n) gap = std::min(gap, table->r(n) - table->r(n - 1));
  a.table_ = std::move(table);
  a.validate_tolerance(std::isfinite(gap) ? gap : 0.5);
  return a;
}

DistanceAlphabet DistanceAlphabet::integers(double tol) {
  DistanceAlphabet a(AlphabetKind::integers, tol);
  a.validate_tolerance(1.0);
  return a;
}

DistanceAlphabet DistanceAlphabet::shifted(double tol) {
  DistanceAlphabet a(AlphabetKind::shifted, tol);
  a.validate_tolerance(0.5);
  return a;
}

DistanceAlphabet DistanceAlphabet::custom(std::vector<double> values, double tol) {
  if (values.empty()) throw InvalidArgument("custom alphabet needs at least one value");
  DistanceAlphabet a(AlphabetKind::custom, tol);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw InvalidArgument("alphabet values must be positive and finite");
    if (i > 0) {
      if (!(values[i] > values[i - 1]))
        throw InvalidArgument("alphabet values must be strictly increasing");
      gap = std::min(gap, values[i] - values[i - 1]);
    }
  }
  a.values_ = std::move(values);
  a.validate_tolerance(gap);
  return a;
}

void DistanceAlphabet::validate_tolerance(double min_gap) const {
  if (!(tol_ >= 0.0) || !(tol_ < 0.5 * min_gap))
    throw InvalidArgument("alphabet tolerance must be >= 0 and below half the minimum gap (" +
                          std::to_string(0.5 * min_gap) + ")");
}

std::string DistanceAlphabet::name() const {
  switch (kind_) {
    case AlphabetKind::bessel: return "bessel";
    case AlphabetKind::integers: return "integers";
    case AlphabetKind::shifted: return "shifted";
    case AlphabetKind::custom: return "custom";
  }
  return "unknown";
}

DistanceAlphabet::Match DistanceAlphabet::nearest(double d) const {
  Match m;
  switch (kind_) {
    case AlphabetKind::bessel: {
      const auto z = bessel::nearest_zero(*table_, d);
      m.index = z.n;
      m.value = table_->r(z.n);
      m.residual = z.residual;
      m.inside = z.residual <= tol_ + table_->err(z.n);
      return m;
    }
    case AlphabetKind::integers: {
      const double n = std::max(1.0, std::ceil(d - 0.5));
      m.index = static_cast<int>(n);
      m.value = n;
      break;
    }
    case AlphabetKind::shifted: {
      const double n = std::max(1.0, std::ceil(2.0 * (d - 0.125) - 0.5));
      m.index = static_cast<int>(n);
      m.value = 0.5 * n + 0.125;
      break;
    }
    case AlphabetKind::custom: {
      const auto it = std::lower_bound(values_.begin(), values_.end(), d);
      const auto pos = it - values_.begin();
      double best = std::numeric_limits<double>::infinity();
      for (auto idx : {pos - 1, pos}) {
        if (idx < 0 || idx >= static_cast<decltype(idx)>(values_.size())) continue;
        const double res = std::abs(d - values_[static_cast<std::size_t>(idx)]);
        if (res < best) {
          best = res;
          m.index = static_cast<int>(idx) + 1;
          m.value = values_[static_cast<std::size_t>(idx)];
        }
      }
      break;
    }
  }
  m.residual = std::abs(d - m.value);
  m.inside = m.residual <= tol_;
  return m;
}

std::vector<double> DistanceAlphabet::values_upto(double d_max) const {
  std::vector<double> out;
  switch (kind_) {
    case AlphabetKind::bessel: {
      const int n_max = table_->n_max();
      if (d_max >= table_->r(n_max) + 0.5) {
        const int need = static_cast<int>(std::ceil(2.0 * d_max)) + 1;
        throw OutOfRange("zero table too short for d_max = " + std::to_string(d_max) +
                             "; need n_max >= " + std::to_string(need),
                         need);
      }
      for (int n = 1; n <= n_max && table_->r(n) <= d_max; ++n) out.push_back(table_->r(n));
      break;
    }
    case AlphabetKind::integers:
      for (int n = 1; n <= d_max; ++n) out.push_back(n);
      break;
    case AlphabetKind::shifted:
      for (int n = 1; 0.5 * n + 0.125 <= d_max; ++n) out.push_back(0.5 * n + 0.125);
      break;
    case AlphabetKind::custom:
      for (double v : values_)
        if (v <= d_max) out.push_back(v);
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> distance_set(const PointSet& a) {
  const Eigen::Index n = a.size();
  if (n < 2) throw InsufficientPoints("distance_set needs at least 2 points");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back((a[i] - a[j]).norm());
  std::sort(out.begin(), out.end());
  return out;
}

DistanceReport check_distances(const PointSet& a, const DistanceAlphabet& alphabet) {
  const Eigen::Index n = a.size();
  if (n < 2) throw InsufficientPoints("check_distances needs at least 2 points");
  DistanceReport rep;
  rep.pass = true;
  rep.max_residual = -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (a[i] - a[j]).norm();
      const auto m = alphabet.nearest(d);
      if (!m.inside) rep.pass = false;
      if (m.residual > rep.max_residual) {
        rep.max_residual = m.residual;
        rep.worst_i = i;
        rep.worst_j = j;
        rep.worst_distance = d;
      }
    }
  }
  return rep;
}

Lemma1Ratio lemma1_ratio(const Point& p1, const Point& p2, const Point& p3) {
  Lemma1Ratio out;
  out.width = min_strip_width(p1, p2, p3);
  out.L = std::min({(p1 - p2).norm(), (p1 - p3).norm(), (p2 - p3).norm()});
  out.ratio = out.width / std::sqrt(out.L);
  return out;
}

Lemma2Ratio lemma2_ratio(const PointSet& a) {
  if (a.size() < 2) throw InsufficientPoints("lemma2_ratio needs at least 2 points");
  double t = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j) t = std::min(t, (a[i] - a[j]).norm());
  return {static_cast<double>(a.size()) / t, t};
}

void write_points_csv(std::ostream& out, const PointSet& a) {
  out << "x,y\n";
  char buf[96];
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a[i].x(), a[i].y());
    out << buf;
  }
}

PointSet read_points_csv(std::istream& in, std::optional<double> scale) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y")
    throw InvalidArgument("point CSV must start with header x,y");
  std::vector<Point> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double x = 0, y = 0;
    char comma = 0;
    if (!(row >> x >> comma >> y) || comma != ',')
      throw InvalidArgument("malformed point row: " + line);
    pts.emplace_back(x, y);
  }
  PointMatrix m(2, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
  if (scale) return PointSet(std::move(m), *scale);
  return PointSet::with_enclosing_scale(std::move(m));
}

}  // namespace orthodisk
