#pragma once

#include <cmath>

#include "orthodisk/parallel.hpp"

namespace orthodisk::katz_tao {

template <typename Derived>
double riesz_energy(const Eigen::MatrixBase<Derived>& coords, double delta, double s) {
  if (!(delta > 0.0)) throw InvalidArgument("riesz_energy: delta must be positive");
  if (!(s >= 0.0)) throw InvalidArgument("riesz_energy: s must be >= 0");
  const Eigen::Index n = coords.cols();
  const double cap = std::pow(delta, -s);
  const double delta2 = delta * delta;
  std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
    const auto i = static_cast<Eigen::Index>(ii);
    double acc = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d2 = (coords.col(i) - coords.col(j)).squaredNorm();
      acc += d2 <= delta2 ? cap : std::pow(d2, -0.5 * s);
    }
    rows[ii] = acc;
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return 2.0 * total + static_cast<double>(n) * cap;
}

}  // namespace orthodisk::katz_tao
