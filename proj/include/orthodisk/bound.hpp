#pragma once

#include <string>

#include "orthodisk/geometry.hpp"

namespace orthodisk::bound {

/// The three case bounds of the exponent argument for fixed (R, eps, u).
template <typename Scalar>
struct BoundTerms {
  Scalar R{}, eps{}, u{};
  Scalar t1{};  // u^(-1-eps)       close pair inside a small best square
  Scalar t2{};  // u R              same case, via the minimal-distance lemma
  Scalar t3{};  // u^(2/3) R^(1+eps) large best square, thin-strip triple

  static BoundTerms at(Scalar R, Scalar eps, Scalar u) {
    using std::pow;
    return {R, eps, u, pow(u, -1 - eps), u * R, pow(u, Scalar(2) / 3) * pow(R, 1 + eps)};
  }

  Scalar value() const { return std::max({t1, t2, t3}); }
};

struct Optimum {
  double u_star = 0.0;
  double bound = 0.0;
  BoundTerms<double> terms;
  bool at_boundary = false;  // minimiser pinned at u -> 1
};

/// Minimises max(t1, t2, t3) over u in (0, 1) by ternary search on log u.
/// Throws InvalidArgument for R < 1 or eps outside [0, 0.5].
Optimum optimize_u(double R, double eps);

enum class Kind { grid, circle, line_ap, cluster, worst_case, cantor };

Kind parse_kind(const std::string& name);
std::string kind_name(Kind kind);

struct GenerateParams {
  double delta = 0.0;    // grid, circle, cluster
  long count = 0;        // line_ap, cluster
  double spacing = 0.0;  // line_ap
  double R = 0.0;        // worst_case
  double s = 0.0;        // cantor
  int depth = 0;         // cantor
};

/// Benchmark families:
///   grid(delta)        1/delta x 1/delta cell centres in [0, 1)^2, R = 1
///   circle(delta)      round(1/delta) equally spaced points on the unit circle, R = 1
///   line_ap(count, spacing)  centred arithmetic progression on the x-axis
///   cluster(count, delta)    sub-grid filling the cell [1/2, 1/2 + delta)^2, R = 1
///   worst_case(R)      rows of blocks: 1-dim above R^(4/5), 2-dim down to
///                      R^(3/5), 0-dim below
///   cantor(s, depth)   4-corner self-similar set, branching exponent s, R = 1
PointSet generate(Kind kind, const GenerateParams& params);

}  // namespace orthodisk::bound
