#include "orthodisk/bound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace orthodisk::bound {
namespace {

// ceil(v) tolerant of pow() landing a few ulps above an integer.
long safe_ceil(double v) { return static_cast<long>(std::ceil(v * (1.0 - 1e-12))); }

}  // namespace

Optimum optimize_u(double R, double eps) {
  if (!(R >= 1.0) || !std::isfinite(R)) throw InvalidArgument("optimize_u: R must be >= 1");
  if (!(eps >= 0.0 && eps <= 0.5)) throw InvalidArgument("optimize_u: eps must lie in [0, 0.5]");
  auto objective = [&](double log_u) { return BoundTerms<double>::at(R, eps, std::exp(log_u)).value(); };

  // The crossing t1 = t3 sits at log u = -(1+eps)/(5/3+eps) log R, well inside.
  double lo = -2.0 * std::log(R) - 10.0;
  double hi = 0.0;
  for (int it = 0; it < 400 && hi - lo > 1e-15; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective(m1) <= objective(m2))
      hi = m2;
    else
      lo = m1;
  }
  Optimum out;
  out.u_star = std::exp(0.5 * (lo + hi));
  out.at_boundary = out.u_star >= 1.0 - 1e-9;
  if (out.at_boundary) out.u_star = 1.0;
  out.terms = BoundTerms<double>::at(R, eps, out.u_star);
  out.bound = out.terms.value();
  return out;
}

Kind parse_kind(const std::string& name) {
  if (name == "grid") return Kind::grid;
  if (name == "circle") return Kind::circle;
  if (name == "line_ap") return Kind::line_ap;
  if (name == "cluster") return Kind::cluster;
  if (name == "worst_case") return Kind::worst_case;
  if (name == "cantor") return Kind::cantor;
  throw InvalidArgument("unknown generator kind '" + name + "'");
}

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::grid: return "grid";
    case Kind::circle: return "circle";
    case Kind::line_ap: return "line_ap";
    case Kind::cluster: return "cluster";
    case Kind::worst_case: return "worst_case";
    case Kind::cantor: return "cantor";
  }
  return "unknown";
}

PointSet generate(Kind kind, const GenerateParams& p) {
  std::vector<Point> pts;
  double scale = 1.0;
  switch (kind) {
    case Kind::grid: {
      if (!(p.delta > 0.0 && p.delta < 1.0)) throw InvalidArgument("grid: delta must lie in (0, 1)");
      const long m = std::lround(1.0 / p.delta);
      if (std::abs(static_cast<double>(m) * p.delta - 1.0) > 1e-9)
        throw InvalidArgument("grid: 1/delta must be an integer");
      for (long j = 0; j < m; ++j)
        for (long i = 0; i < m; ++i) pts.emplace_back((i + 0.5) / m, (j + 0.5) / m);
      break;
    }
    case Kind::circle: {
      if (!(p.delta > 0.0 && p.delta <= 1.0 / 3.0)) throw InvalidArgument("circle: delta must lie in (0, 1/3]");
      const long n = std::lround(1.0 / p.delta);
      for (long k = 0; k < n; ++k) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        pts.emplace_back(std::cos(phi), std::sin(phi));
      }
      break;
    }
    case Kind::line_ap: {
      if (p.count < 1) throw InvalidArgument("line_ap: count must be >= 1");
      if (!(p.spacing > 0.0)) throw InvalidArgument("line_ap: spacing must be positive");
      const double half = 0.5 * static_cast<double>(p.count - 1);
      for (long k = 0; k < p.count; ++k) pts.emplace_back((static_cast<double>(k) - half) * p.spacing, 0.0);
      scale = half > 0.0 ? half * p.spacing : p.spacing;
      break;
    }
    case Kind::cluster: {
      if (p.count < 1) throw InvalidArgument("cluster: count must be >= 1");
      if (!(p.delta > 0.0 && p.delta < 0.5)) throw InvalidArgument("cluster: delta must lie in (0, 0.5)");
      const long m = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(p.count))));
      const double h = p.delta / static_cast<double>(m);
      for (long k = 0; k < p.count; ++k)
        pts.emplace_back(0.5 + (static_cast<double>(k % m) + 0.5) * h, 0.5 + (static_cast<double>(k / m) + 0.5) * h);
      break;
    }
    case Kind::worst_case: {
      if (!(p.R >= 1.0) || !std::isfinite(p.R)) throw InvalidArgument("worst_case: R must be >= 1");
      const double R = p.R;
      const long blocks = safe_ceil(std::pow(R, 0.2));
      const long per_side = safe_ceil(std::pow(R, 0.2));
      const double spacing = std::pow(R, 0.6);
      const double stride = static_cast<double>(per_side) * spacing;
      for (long j = 0; j < per_side; ++j) {
        const double y = (static_cast<double>(j) + 0.5) * spacing;
        if (y > R) continue;
        for (long b = 0; b < blocks; ++b) {
          for (long i = 0; i < per_side; ++i) {
            const double x = static_cast<double>(b) * stride + (static_cast<double>(i) + 0.5) * spacing;
            if (x <= R) pts.emplace_back(x, y);
          }
        }
      }
      scale = R;
      break;
    }
    case Kind::cantor: {
      if (!(p.s > 0.0 && p.s <= 2.0)) throw InvalidArgument("cantor: s must lie in (0, 2]");
      if (p.depth < 1 || p.depth > 10) throw InvalidArgument("cantor: depth must lie in [1, 10]");
      const double ratio = std::pow(4.0, -1.0 / p.s);
      struct Cell {
        Point corner;
        double side;
      };
      std::vector<Cell> cells{{Point(0, 0), 1.0}};
      for (int level = 0; level < p.depth; ++level) {
        std::vector<Cell> next;
        next.reserve(cells.size() * 4);
        for (const auto& c : cells) {
          const double child = c.side * ratio;
          const double far = c.side - child;
          for (const Point& off : {Point(0, 0), Point(far, 0), Point(0, far), Point(far, far)})
            next.push_back({c.corner + off, child});
        }
        cells = std::move(next);
      }
      for (const auto& c : cells) pts.push_back(c.corner + Point::Constant(0.5 * c.side));
      std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.y() != b.y() ? a.y() < b.y() : a.x() < b.x();
      });
      break;
    }
  }
  return PointSet(pts, scale);
}

}  // namespace orthodisk::bound
