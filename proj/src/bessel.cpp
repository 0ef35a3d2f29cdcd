#include "orthodisk/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "orthodisk/parallel.hpp"

namespace orthodisk::bessel {
namespace {

constexpr double kPi = std::numbers::pi;

// Evaluations with |f| below this are not trusted for sign decisions.
constexpr double kSignGuard = 1e-15;

void require_argument(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw InvalidArgument("bessel argument must be finite and >= 0, got " + std::to_string(x));
}

// Neumaier-compensated power series sum_k c_k with c_{k+1} = c_k * -(x/2)^2 / ((k+1)(k+1+order)).
double series(double x, int order) {
  const double q = -0.25 * x * x;
  double term = order == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  double comp = 0.0;
  for (int k = 0; k < 60; ++k) {
    term *= q / (static_cast<double>(k + 1) * static_cast<double>(k + 1 + order));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum + comp;
}

struct MillerPair {
  double j0, j1;
};

MillerPair miller(double x) {
  const int start = 2 * (static_cast<int>(x) / 2) + 40;
  double next = 0.0;   // J_{k+1}
  double cur = 1e-30;  // J_k
  double norm = 0.0;
  double at0 = 0.0, at1 = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = 2.0 * k / x * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      at1 *= 1e-250;
    }
    if (k - 1 == 1) at1 = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
  }
  at0 = cur;
  norm += at0;
  return {at0 / norm, at1 / norm};
}

// a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k), k = 0..15.
constexpr std::array<double, 16> hankel_coefficients(int nu) {
  std::array<double, 16> a{};
  a[0] = 1.0;
  const double mu = 4.0 * nu * nu;
  for (int k = 1; k < 16; ++k) {
    const double odd = 2.0 * k - 1.0;
    a[k] = a[k - 1] * (mu - odd * odd) / (8.0 * k);
  }
  return a;
}

constexpr auto kHankel0 = hankel_coefficients(0);
constexpr auto kHankel1 = hankel_coefficients(1);

// Returns P and Q of the Hankel expansion.
std::pair<double, double> hankel_pq(const std::array<double, 16>& a, double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double p = 0.0, q = 0.0;
  for (int k = 7; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    p = p * inv2 + sign * a[static_cast<std::size_t>(2 * k)];
    q = q * inv2 + sign * a[static_cast<std::size_t>(2 * k + 1)];
  }
  return {p, q * inv};
}

double hankel_j0(double x) {
  const auto [p, q] = hankel_pq(kHankel0, x);
  const double c = std::cos(x), s = std::sin(x);
  // chi = x - pi/4
  const double cos_chi = (c + s) * std::numbers::sqrt2 * 0.5;
  const double sin_chi = (s - c) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

double hankel_j1(double x) {
  const auto [p, q] = hankel_pq(kHankel1, x);
  const double c = std::cos(x), s = std::sin(x);
  // chi = x - 3 pi/4
  const double cos_chi = (s - c) * std::numbers::sqrt2 * 0.5;
  const double sin_chi = -(s + c) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

double f(double r) { return j1(2.0 * kPi * r); }

bool certified_sign_change(double r, double e) {
  const double lo = f(r - e), hi = f(r + e);
  return lo * hi < 0.0 && std::abs(lo) > kSignGuard && std::abs(hi) > kSignGuard;
}

// Smallest doubling of `seed` that certifies, or a negative value.
double certify_radius(double r, double seed, double tol) {
  double e = std::max(seed, 4.0 * std::numeric_limits<double>::epsilon() * r);
  for (; e <= tol; e *= 2.0)
    if (certified_sign_change(r, e)) return e;
  if (certified_sign_change(r, tol)) return tol;
  return -1.0;
}

ZeroEntry find_zero(int n, double tol) {
  double lo = bracket_lo(n), hi = bracket_hi(n);
  double flo = f(lo), fhi = f(hi);
  if (!(flo * fhi < 0.0))
    throw InternalConsistency("no sign change of J1(2 pi r) on bracket for n = " +
                              std::to_string(n));

  double r = 0.5 * n + 0.125;
  double last_step = hi - lo;
  bool converged = false;
  for (int it = 0; it < 30; ++it) {
    const double x = 2.0 * kPi * r;
    const double v = j1(x);
    const double slope = 2.0 * kPi * (j0(x) - v / x);
    const double step = v / slope;
    const double next = r - step;
    if (!(next > lo && next < hi)) break;
    last_step = std::abs(step);
    r = next;
    if (last_step <= 1e-3 * tol || last_step <= 2.0 * std::numeric_limits<double>::epsilon() * r) {
      converged = true;
      break;
    }
  }
  if (converged) {
    const double e = certify_radius(r, 2.0 * last_step, tol);
    if (e > 0.0) return {n, r, e};
  }

  // Bisection fallback on the validated bracket.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  r = 0.5 * (lo + hi);
  const double e = certify_radius(r, 0.5 * (hi - lo), tol);
  if (e < 0.0)
    throw InternalConsistency("cannot certify zero n = " + std::to_string(n) +
                              " at tolerance " + std::to_string(tol));
  return {n, r, e};
}

}  // namespace

double j0(double x) {
  require_argument(x);
  if (x < kSeriesCrossover) return series(x, 0);
  if (x < kHankelCrossover) return miller(x).j0;
  return hankel_j0(x);
}

double j1(double x) {
  require_argument(x);
  if (x < kSeriesCrossover) return series(x, 1);
  if (x < kHankelCrossover) return miller(x).j1;
  return hankel_j1(x);
}

ZeroTable::ZeroTable(std::vector<ZeroEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ZeroEntry& e = entries_[i];
    const int n = static_cast<int>(i) + 1;
    const std::string where = "zero table entry " + std::to_string(n) + ": ";
    if (e.n != n) throw InternalConsistency(where + "index mismatch");
    if (i > 0 && !(e.r > entries_[i - 1].r)) throw InternalConsistency(where + "not increasing");
    if (!(e.r >= 0.5 * n - 0.125 && e.r <= 0.5 * n + 0.125))
      throw InternalConsistency(where + "outside [n/2 - 1/8, n/2 + 1/8]");
    if (!(e.err > 0.0) || !certified_sign_change(e.r, e.err))
      throw InternalConsistency(where + "sign-change certificate fails");
  }
}

double ZeroTable::max_err() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.err);
  return m;
}

ZeroTable compute_zeros(int n_max, double tol) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  if (!(tol >= 1e-14 && tol <= 1e-3)) throw InvalidArgument("tol must lie in [1e-14, 1e-3]");
  std::vector<ZeroEntry> entries(static_cast<std::size_t>(n_max));
  parallel_for(entries.size(), [&](std::size_t i) {
    entries[i] = find_zero(static_cast<int>(i) + 1, tol);
  });
  return ZeroTable(std::move(entries));
}

AsymptoticReport asymptotic_residuals(const ZeroTable& table) {
  if (table.n_max() == 0) throw InsufficientPoints("empty zero table");
  AsymptoticReport out;
  out.residuals.reserve(static_cast<std::size_t>(table.n_max()));
  for (const auto& e : table.entries()) {
    const double res = e.r - 0.5 * e.n - 0.125;
    out.residuals.push_back(res);
    const double scaled = e.n * std::abs(res);
    if (scaled > out.max_scaled) {
      out.max_scaled = scaled;
      out.argmax = e.n;
    }
  }
  return out;
}

SumFreeMargin sum_free_margin(const ZeroTable& table) {
  const int n_max = table.n_max();
  if (n_max < 2) throw InvalidArgument("sum_free_margin needs n_max >= 2");
  std::vector<double> r(static_cast<std::size_t>(n_max));
  for (int i = 0; i < n_max; ++i) r[static_cast<std::size_t>(i)] = table.r(i + 1);

  SumFreeMargin best;
  best.c_min = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    for (int m = n; m <= n_max; ++m) {
      const double sum = r[static_cast<std::size_t>(n - 1)] + r[static_cast<std::size_t>(m - 1)];
      const auto it = std::lower_bound(r.begin(), r.end(), sum);
      const int hi = static_cast<int>(it - r.begin());  // 0-based index of first r >= sum
      for (int idx : {hi - 1, hi}) {
        if (idx < 0 || idx >= n_max) continue;
        const double v = std::abs(sum - r[static_cast<std::size_t>(idx)]);
        if (v < best.c_min) best = {v, n, m, idx + 1};
      }
    }
  }
  return best;
}

NearestZero nearest_zero(const ZeroTable& table, double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("distance must be positive and finite");
  const int n_max = table.n_max();
  if (n_max == 0 || d > table.r(n_max) + 0.5) {
    const int need = static_cast<int>(std::ceil(2.0 * d)) + 1;
    throw OutOfRange("distance " + std::to_string(d) + " beyond zero table; need n_max >= " +
                         std::to_string(need),
                     need);
  }
  const auto& es = table.entries();
  const auto it = std::lower_bound(es.begin(), es.end(), d,
                                   [](const ZeroEntry& e, double v) { return e.r < v; });
  NearestZero best{0, std::numeric_limits<double>::infinity()};
  const auto pos = it - es.begin();
  for (auto idx : {pos - 1, pos}) {
    if (idx < 0 || idx >= static_cast<decltype(idx)>(es.size())) continue;
    const double res = std::abs(d - es[static_cast<std::size_t>(idx)].r);
    if (res < best.residual) best = {static_cast<int>(idx) + 1, res};
  }
  return best;
}

double disk_fourier(double rho) {
  if (!std::isfinite(rho) || rho < 0.0) throw InvalidArgument("rho must be finite and >= 0");
  if (rho == 0.0) return kPi;
  return j1(2.0 * kPi * rho) / rho;
}

void write_csv(std::ostream& out, const ZeroTable& table) {
  out << "n,r,err\n";
  char buf[96];
  for (const auto& e : table.entries()) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", e.n, e.r, e.err);
    out << buf;
  }
}

ZeroTable read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n,r,err")
    throw InvalidArgument("zero table CSV must start with header n,r,err");
  std::vector<ZeroEntry> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    ZeroEntry e{};
    char c1 = 0, c2 = 0;
    if (!(row >> e.n >> c1 >> e.r >> c2 >> e.err) || c1 != ',' || c2 != ',')
      throw InvalidArgument("malformed zero table row: " + line);
    entries.push_back(e);
  }
  return ZeroTable(std::move(entries));
}

}  // namespace orthodisk::bessel
