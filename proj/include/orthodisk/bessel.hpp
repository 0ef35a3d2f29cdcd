#pragma once

#include <iosfwd>
#include <vector>

#include "orthodisk/core.hpp"

namespace orthodisk::bessel {

/// Bessel functions of the first kind of order 0 and 1 for x >= 0.
///
/// Three regimes: power series for small arguments, Miller backward
/// recurrence (normalised by J0 + 2*sum J_2k = 1) in the transition band,
/// and the Hankel asymptotic expansion with eight terms in each of P and Q
/// for x >= kHankelCrossover. Absolute error stays below 1e-13 on [0, 1e4].
double j0(double x);
double j1(double x);

inline constexpr double kSeriesCrossover = 6.0;
inline constexpr double kHankelCrossover = 25.0;

struct ZeroEntry {
  int n;
  double r;    // zero of J1(2*pi*r)
  double err;  // certified: J1 changes sign on [r - err, r + err]
};

/// Certified zeros r_1 < r_2 < ... of J1(2*pi*r). Immutable once built;
/// construction re-checks every table invariant.
class ZeroTable {
 public:
  explicit ZeroTable(std::vector<ZeroEntry> entries);

  int n_max() const { return static_cast<int>(entries_.size()); }
  const std::vector<ZeroEntry>& entries() const { return entries_; }
  const ZeroEntry& operator[](int n) const { return entries_[static_cast<std::size_t>(n - 1)]; }
  double r(int n) const { return (*this)[n].r; }
  double err(int n) const { return (*this)[n].err; }
  double max_err() const;

 private:
  std::vector<ZeroEntry> entries_;
};

/// Bracket (n/2 - 1/8, n/2 + 1/4) holding exactly one zero of J1(2*pi*r).
inline double bracket_lo(int n) { return 0.5 * n - 0.125; }
inline double bracket_hi(int n) { return 0.5 * n + 0.25; }

/// Newton from the McMahon leading term n/2 + 1/8, bisection fallback.
/// Every entry satisfies err <= tol. Throws InvalidArgument for n_max < 1 or
/// tol outside [1e-14, 1e-3], and InternalConsistency if a bracket lacks a
/// sign change or a zero cannot be certified at the requested tolerance.
ZeroTable compute_zeros(int n_max, double tol);

struct AsymptoticReport {
  std::vector<double> residuals;  // residuals[n-1] = r_n - n/2 - 1/8
  double max_scaled = 0.0;        // max_n n*|residual(n)|
  int argmax = 0;
};

AsymptoticReport asymptotic_residuals(const ZeroTable& table);

struct SumFreeMargin {
  double c_min = 0.0;
  int n = 0, m = 0, k = 0;  // witness: |r_n + r_m - r_k| = c_min
};

/// min over n <= m and all k of |r_n + r_m - r_k|. The nearest r_k to each
/// sum is located by binary search; ties resolve to the lexicographically
/// smallest (n, m, k).
SumFreeMargin sum_free_margin(const ZeroTable& table);

struct NearestZero {
  int n = 0;
  double residual = 0.0;
};

/// Index minimising |d - r_n| (ties toward smaller n). Throws OutOfRange when
/// d exceeds r_{n_max} + 0.5.
NearestZero nearest_zero(const ZeroTable& table, double d);

/// Radial profile J1(2*pi*rho)/rho of the disk indicator's Fourier transform;
/// value pi at rho = 0.
double disk_fourier(double rho);

/// CSV with header `n,r,err`, 17 significant digits.
void write_csv(std::ostream& out, const ZeroTable& table);
ZeroTable read_csv(std::istream& in);

}  // namespace orthodisk::bessel
