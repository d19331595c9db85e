#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "core_svi.hpp"
#include "errors.hpp"
#include "numerics.hpp"

namespace smile_domain {

enum class DegenerateCase { generic, b_one_minus_rho_eq_2, b_one_plus_rho_eq_2, b2_rho0 };

inline const char* to_string(DegenerateCase c) {
  switch (c) {
    case DegenerateCase::generic: return "generic";
    case DegenerateCase::b_one_minus_rho_eq_2: return "b_one_minus_rho_eq_2";
    case DegenerateCase::b_one_plus_rho_eq_2: return "b_one_plus_rho_eq_2";
    case DegenerateCase::b2_rho0: return "b2_rho0";
  }
  return "?";
}

// Open interval of admissible mu.
struct FukasawaInterval {
  double lower;
  double upper;
  DegenerateCase degenerate_case = DegenerateCase::generic;

  bool empty() const { return !(lower < upper); }
  bool contains(double mu) const { return lower < mu && mu < upper; }
};

inline DegenerateCase classify_wings(double b, double rho) {
  bool minus = near(b * (1.0 - rho), 2.0);
  bool plus = near(b * (1.0 + rho), 2.0);
  if (minus && plus) return DegenerateCase::b2_rho0;
  if (minus) return DegenerateCase::b_one_minus_rho_eq_2;
  if (plus) return DegenerateCase::b_one_plus_rho_eq_2;
  return DegenerateCase::generic;
}

inline void check_roger_lee(double b, double rho) {
  if (b * (1.0 + rho) > 2.0 + bound_eps || b * (1.0 - rho) > 2.0 + bound_eps)
    throw RogerLeeViolation("wing slopes exceed b(1 +- rho) <= 2");
}

// g-(l) = (rho s + l)^2 (s(1/2 + b rho/4) + b l/4) - (rho l + s), s = sqrt(l^2+1).
// Written so that the l -> -inf cancellations are done analytically.
inline double l_minus_curve(double l, double b, double rho) {
  double s = std::hypot(l, 1.0);
  double c = 0.5 + b * rho / 4.0;
  double lin = n_prime(l, rho, s) * s;  // rho s + l
  double second;
  if (l < 0) {
    double al = -l;
    second = c / (s + al) + al * (2.0 - b * (1.0 - rho)) / 4.0;
  } else {
    second = s * c + b * l / 4.0;
  }
  return lin * lin * second - rho_l_plus_s(l, rho, s);
}

// Unique l- < l* with g-(l-) = gamma.
inline double solve_l_minus(double gamma, double b, double rho) {
  if (!(std::abs(rho) <= 1)) throw InvalidParams("solve_l_minus: |rho| must be <= 1");
  if (rho >= 1) throw InvalidParams("solve_l_minus: no l* for rho = 1");
  if (rho <= -1 ? !(gamma >= 0) : !(gamma + std::sqrt(1.0 - rho * rho) > 0))
    throw InvalidParams("solve_l_minus: gamma must exceed -sqrt(1-rho^2)");
  check_roger_lee(b, rho);
  if (near(b * (1.0 - rho), 2.0)) {
    auto tag = near(b * (1.0 + rho), 2.0) ? DegenerateCase::b2_rho0
                                          : DegenerateCase::b_one_minus_rho_eq_2;
    throw NoRoot(std::string("solve_l_minus: no root in degenerate case ") + to_string(tag));
  }
  auto resid = [&](double l) { return l_minus_curve(l, b, rho) - gamma; };

  std::vector<double> grid;
  if (rho <= -1) {
    // l* = +inf: symmetric asinh-spaced grid over the real line.
    double t = std::asinh(1e8);
    grid = linspace(-t, t, 401);
    for (auto& g : grid) g = std::sinh(g);
  } else {
    double ls = -rho / std::sqrt(1.0 - rho * rho);
    auto d = logspace(1e-6, std::max(ls + 1e8, 1.0), 128);
    grid.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) grid[i] = ls - d[d.size() - 1 - i];
  }
  double prev = resid(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double cur = resid(grid[i]);
    if ((prev > 0) != (cur > 0)) return bisect(resid, grid[i - 1], grid[i]);
    prev = cur;
  }
  throw NoRoot("solve_l_minus: root not bracketed");
}

// L-(l) = 2N(l)(1/N'(l) + b/4) - l.
inline double L_minus(double l, double gamma, double b, double rho) {
  auto n = n_funcs(l, gamma, rho);
  if (n.N1 == 0) throw DomainError("L_minus: undefined at l = l*");
  return 2.0 * n.N * (1.0 / n.N1 + b / 4.0) - l;
}

// Fukasawa conditions hold iff mu lies in this interval (|rho| < 1).
inline FukasawaInterval mu_interval(double gamma, double b, double rho) {
  if (!(std::abs(rho) < 1)) throw InvalidParams("mu_interval: requires |rho| < 1");
  if (!(b >= 0)) throw InvalidParams("mu_interval: requires b >= 0");
  if (!(gamma + std::sqrt(1.0 - rho * rho) > 0))
    throw InvalidParams("mu_interval: gamma must exceed -sqrt(1-rho^2)");
  check_roger_lee(b, rho);
  FukasawaInterval I;
  I.degenerate_case = classify_wings(b, rho);
  bool lower_deg = near(b * (1.0 - rho), 2.0);
  bool upper_deg = near(b * (1.0 + rho), 2.0);
  I.lower = lower_deg ? -b * gamma / 2.0
                      : L_minus(solve_l_minus(gamma, b, rho), gamma, b, rho);
  I.upper = upper_deg ? b * gamma / 2.0
                      : -L_minus(solve_l_minus(gamma, b, -rho), gamma, b, -rho);
  return I;
}

// rho = +-1: only one wing constrains mu. Requires gamma >= 0 and b <= 1.
inline FukasawaInterval unit_correlation_interval(double gamma, double b, double rho) {
  if (std::abs(rho) != 1) throw InvalidParams("unit_correlation_interval: requires |rho| = 1");
  if (!(gamma >= 0)) throw InvalidParams("unit correlation requires gamma >= 0");
  if (!(b > 0)) throw InvalidParams("unit correlation requires b > 0");
  check_roger_lee(b, rho);
  double upper = near(b, 1.0) ? b * gamma / 2.0
                              : -L_minus(solve_l_minus(gamma, b, -1.0), gamma, b, -1.0);
  FukasawaInterval I;
  I.degenerate_case = near(b, 1.0) ? (rho > 0 ? DegenerateCase::b_one_plus_rho_eq_2
                                              : DegenerateCase::b_one_minus_rho_eq_2)
                                   : DegenerateCase::generic;
  if (rho > 0) {
    I.lower = -inf;
    I.upper = upper;
  } else {
    I.lower = -upper;
    I.upper = inf;
  }
  return I;
}

inline FukasawaInterval admissible_mu(double gamma, double b, double rho) {
  return std::abs(rho) == 1 ? unit_correlation_interval(gamma, b, rho)
                            : mu_interval(gamma, b, rho);
}

inline bool fukasawa_holds(const SviShape& s) {
  return admissible_mu(s.gamma, s.b, s.rho).contains(s.mu);
}

// F~(b, rho): the interval is non-empty iff gamma > F~.
inline double fukasawa_threshold(double b, double rho) {
  if (!(std::abs(rho) < 1)) throw InvalidParams("fukasawa_threshold: requires |rho| < 1");
  if (!(b >= 0)) throw InvalidParams("fukasawa_threshold: requires b >= 0");
  check_roger_lee(b, rho);
  double floor = -std::sqrt(1.0 - rho * rho);
  auto non_empty = [&](double g) {
    try {
      return !mu_interval(g, b, rho).empty();
    } catch (const NoRoot&) {
      return false;  // root indistinguishable from l* at the positivity floor
    }
  };
  if (!non_empty(0.0)) return 0.0;
  auto [lo, hi] = bisect_predicate(non_empty, floor, 0.0, 1e-13);
  return 0.5 * (lo + hi);
}

}  // namespace smile_domain
