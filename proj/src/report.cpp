#include "orthodisk/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace orthodisk::report {
namespace {

void write_string(std::ostream& out, const std::string& s) {
  // nlohmann handles escaping for scalar strings.
  out << Json(s).dump();
}

void write(std::ostream& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad;
        write_string(out, it.key());
        out << ": ";
        write(out, it.value(), indent + 2);
      }
      out << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out << ",\n";
        first = false;
        out << pad;
        write(out, e, indent + 2);
      }
      out << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out << buf;
      return;
    }
    default:
      out << v.dump();
  }
}

Json point_json(const Point& p) { return Json::array({p.x(), p.y()}); }

Json tube_json(const tubes::TubeStat& s) {
  return {{"theta", s.tube.theta}, {"offset", s.tube.offset}, {"count", s.count}, {"energy", s.energy}};
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
  write(out, value, 0);
  out << "\n";
}

std::string dump(const Json& value) {
  std::ostringstream s;
  write_json(s, value);
  return s.str();
}

Json to_json(const bessel::SumFreeMargin& margin, int n_max) {
  return {{"n_max", n_max},
          {"c_min", margin.c_min},
          {"witness", {{"n", margin.n}, {"m", margin.m}, {"k", margin.k}}}};
}

Json to_json(const DistanceReport& rep) {
  return {{"pass", rep.pass},
          {"max_residual", rep.max_residual},
          {"worst_pair", Json::array({rep.worst_i, rep.worst_j})},
          {"worst_distance", rep.worst_distance}};
}

Json to_json(const katz_tao::Certification& cert) {
  return {{"delta", cert.delta},
          {"s", cert.s},
          {"C", cert.C},
          {"ok", cert.ok},
          {"worst",
           {{"x", cert.worst.subsquare.corner.x()},
            {"y", cert.worst.subsquare.corner.y()},
            {"w", cert.worst.subsquare.side},
            {"ratio", cert.worst.observed_ratio}}}};
}

Json to_json(const std::vector<katz_tao::ScaleCount>& profile) {
  Json out = Json::array();
  for (const auto& sc : profile) out.push_back({{"scale", sc.scale}, {"count", sc.count}, {"slope", sc.slope}});
  return out;
}

Json to_json(const std::vector<tubes::TubeStat>& stats) {
  Json out = Json::array();
  for (const auto& s : stats) out.push_back(tube_json(s));
  return out;
}

Json to_json(const tubes::PropositionResult& res) {
  return {{"count", res.count},
          {"threshold", res.threshold},
          {"window", Json::array({res.window_lo, res.window_hi})},
          {"family_size", res.family_size},
          {"tubes", to_json(res.tubes)}};
}

Json to_json(const tubes::TripleResult& res) {
  const char* path = res.path == tubes::TriplePath::proof      ? "proof"
                     : res.path == tubes::TriplePath::fallback ? "fallback"
                                                               : "none";
  Json pts = Json::array();
  if (res.found())
    for (const auto& p : res.points) pts.push_back(point_json(p));
  return {{"found", res.found()},
          {"path", path},
          {"points", pts},
          {"strip_width", res.strip_width},
          {"min_sep", res.min_sep},
          {"required_sep", res.required_sep},
          {"delta_warning", res.delta_warning}};
}

Json points_json(const PointSet& a) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i) out.push_back(point_json(a[i]));
  return out;
}

Json to_json(const search::SearchResult& res) {
  return {{"best", points_json(res.best)},
          {"best_size", res.best_size},
          {"nodes_explored", res.nodes_explored},
          {"exhausted", res.exhausted},
          {"residual_stats", {{"min", res.residual_stats.min}, {"median", res.residual_stats.median}}}};
}

Json to_json(const search::FourPointSummary& summary) {
  Json hits = Json::array();
  for (const auto& t : summary.hit_triangles) hits.push_back(Json::array({t[0], t[1], t[2]}));
  return {{"triangles", summary.triangles},
          {"min", summary.min},
          {"median", summary.median},
          {"histogram_low_exponent", search::kHistogramLowExponent},
          {"histogram", summary.histogram},
          {"hits", summary.hits},
          {"hit_triangles", hits}};
}

Json to_json(const bound::Optimum& opt) {
  return {{"u_star", opt.u_star},
          {"bound", opt.bound},
          {"t1", opt.terms.t1},
          {"t2", opt.terms.t2},
          {"t3", opt.terms.t3}};
}

}  // namespace orthodisk::report
