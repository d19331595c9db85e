#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace smile_domain {

// Absolute tolerance for comparisons against domain bounds.
inline constexpr double bound_eps = 1e-10;

inline constexpr double inf = std::numeric_limits<double>::infinity();

inline bool near(double a, double b, double eps = bound_eps) {
  return std::abs(a - b) <= eps;
}

// Bisection on a bracket [lo, hi] with a sign change. Runs until the
// midpoint can no longer be distinguished from an endpoint or the width
// drops below xtol.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 0.0, int max_iter = 300) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) throw NoRoot("bisect: no sign change on bracket");
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    if (std::abs(hi - lo) <= xtol) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(flo) <= std::abs(f(hi)) ? lo : hi;
}

// Bisection on a monotone predicate: returns the boundary between
// pred(lo) == false and pred(hi) == true.
template <class P>
std::pair<double, double> bisect_predicate(P&& pred, double lo, double hi, double xtol,
                                           int max_iter = 300) {
  for (int i = 0; i < max_iter && std::abs(hi - lo) > xtol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

struct Extremum {
  double x;
  double value;
};

// Golden-section search for a maximum of a unimodal function on [a, b].
template <class F>
Extremum golden_max(F&& f, double a, double b, double xtol, int max_iter = 200) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && std::abs(b - a) > xtol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

template <class F>
Extremum golden_min(F&& f, double a, double b, double xtol, int max_iter = 200) {
  auto e = golden_max([&](double t) { return -f(t); }, a, b, xtol, max_iter);
  return {e.x, -e.value};
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = b;
  return v;
}

// n points geometrically spaced from lo to hi (both > 0).
inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
  auto t = linspace(std::log(lo), std::log(hi), n);
  for (auto& x : t) x = std::exp(x);
  t.front() = lo;
  t.back() = hi;
  return t;
}

}  // namespace smile_domain
