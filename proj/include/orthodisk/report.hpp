#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthodisk/bessel.hpp"
#include "orthodisk/bound.hpp"
#include "orthodisk/geometry.hpp"
#include "orthodisk/katz_tao.hpp"
#include "orthodisk/search.hpp"
#include "orthodisk/tubes.hpp"

namespace orthodisk::report {

using Json = nlohmann::ordered_json;

/// Writes `value` with two-space indentation. Floating-point numbers use
/// %.17g; NaN and infinities become null.
void write_json(std::ostream& out, const Json& value);
std::string dump(const Json& value);

Json to_json(const bessel::SumFreeMargin& margin, int n_max);
Json to_json(const DistanceReport& rep);
Json to_json(const katz_tao::Certification& cert);
Json to_json(const std::vector<katz_tao::ScaleCount>& profile);
Json to_json(const std::vector<tubes::TubeStat>& stats);
Json to_json(const tubes::PropositionResult& res);
Json to_json(const tubes::TripleResult& res);
Json to_json(const search::SearchResult& res);
Json to_json(const search::FourPointSummary& summary);
Json to_json(const bound::Optimum& opt);
Json points_json(const PointSet& a);

}  // namespace orthodisk::report
