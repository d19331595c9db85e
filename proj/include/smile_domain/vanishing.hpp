#pragma once

#include <algorithm>
#include <cmath>

#include "certificate.hpp"
#include "core_svi.hpp"
#include "errors.hpp"
#include "numerics.hpp"

namespace smile_domain::vanishing {

enum class Direction { upward, downward };

// a = 0 and rho = +1 (upward) or -1 (downward).
struct VanishingParams {
  double b = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
  Direction direction = Direction::upward;

  RawSviParams to_raw() const {
    return {0.0, b, direction == Direction::upward ? 1.0 : -1.0, mu * sigma, sigma};
  }

  static VanishingParams from_raw(const RawSviParams& p) {
    if (p.a != 0 || std::abs(p.rho) != 1)
      throw InvalidParams("vanishing smile requires a = 0 and |rho| = 1");
    if (!(p.sigma > 0)) throw InvalidParams("vanishing smile requires sigma > 0");
    return {p.b, p.m / p.sigma, p.sigma, p.rho > 0 ? Direction::upward : Direction::downward};
  }
};

inline double adjusted_mu(double mu, Direction d) { return d == Direction::upward ? mu : -mu; }

// Upper end of the admissible (direction-adjusted) mu.
inline double fukasawa_bound(double b) {
  if (!(b >= 0 && b <= 1)) throw InvalidParams("vanishing: requires 0 <= b <= 1");
  return std::sqrt(3.0 * (1.0 - b));
}

inline double x_lower(double b) { return (2.0 + b) / (4.0 - b); }

namespace detail {

// Closed forms written in (x, u = 1 - x) so that x -> 1 keeps full precision.
inline double mu_star_xu(double x, double u, double b) {
  double b2 = b * b;
  double x2 = x * x;
  double rad = 4 * b2 * x2 * x2 * x2 + 8 * b2 * x2 * x2 * x + 8 * x2 * x2 * (8 - b2) -
               4 * x2 * x * (5 * b2 + 32) + x2 * (96 - b2) + 2 * x * (5 * b2 - 16) + 4 + 3 * b2;
  if (rad < 0) {
    if (rad < -1e-12) throw DomainError("mu_star: negative radicand");
    rad = 0;
  }
  double sq = std::sqrt(u * (2.0 - u));
  return (2 * u * (2 * x2 - 8 * x - 1) + std::sqrt(rad)) / (2 * sq * (2 * x2 - 2 * x - 1));
}

inline double sigma_star_xu(double x, double u, double b) {
  double sq = std::sqrt(u * (2.0 - u));
  double ms = mu_star_xu(x, u, b);
  double t = 2 - x - ms * sq;
  double den = 4 * t * t - b * b * (1 + x) * (1 + x);
  if (!(den > 0)) throw DegenerateError("sigma_star: non-positive denominator");
  return -4 * b * sq * (u - 2 * x * x) / den;  // 1 - x - 2x^2 = u - 2x^2
}

inline void check_x(double x, double b) {
  if (!(b >= 0 && b < 1)) throw InvalidParams("vanishing parametrization requires 0 <= b < 1");
  if (!(x > x_lower(b) && x < 1)) throw DomainError("vanishing: x outside ((2+b)/(4-b), 1)");
}

}  // namespace detail

// Unique mu for which x is the minimizer of f~ (upward orientation).
inline double mu_star(double x, double b) {
  detail::check_x(x, b);
  return detail::mu_star_xu(x, 1.0 - x, b);
}

// mu* in the orientation of the given direction.
inline double signed_mu_star(double x, double b, Direction d) {
  return adjusted_mu(mu_star(x, b), d);
}

// sigma*(x); identical for both directions once mu is mapped accordingly.
inline double sigma_star_closed(double x, double b, Direction = Direction::upward) {
  detail::check_x(x, b);
  return detail::sigma_star_xu(x, 1.0 - x, b);
}

struct XRecovery {
  double x;
  double u;  // 1 - x, kept separately for precision near x = 1
  bool clamped;
};

// Inverts the decreasing map x -> mu*(x) by bisection in log(1 - x).
inline XRecovery x_from_mu(double mu, double b) {
  if (!(b > 0 && b < 1)) throw InvalidParams("x_from_mu requires 0 < b < 1");
  double width = 1.0 - x_lower(b);
  double delta = std::min(1e-12, 1e-3 * width);
  double u_hi = width - delta;
  double u_lo = 1e-300;
  auto mu_of = [&](double t) {
    double u = std::exp(t);
    return detail::mu_star_xu(1.0 - u, u, b);
  };
  double t_hi = std::log(u_hi);
  double t_lo = std::log(u_lo);
  if (mu >= mu_of(t_hi)) return {1.0 - u_hi, u_hi, true};
  if (mu <= mu_of(t_lo)) return {1.0 - u_lo, u_lo, true};
  double t = bisect([&](double tt) { return mu_of(tt) - mu; }, t_lo, t_hi);
  double u = std::exp(t);
  return {1.0 - u, u, false};
}

inline double subdomain_bound(double b) {
  if (!(b > 0 && b < 1)) throw InvalidParams("subdomain_bound requires 0 < b < 1");
  return (34 * std::sqrt(2.0) - 5 * std::sqrt(5.0)) * b / (54 * (1 - b * b));
}

// Explicit sufficient condition: adjusted mu <= 0 and sigma above a closed-form bound.
inline bool subdomain_check(double b, double mu, double sigma, Direction d) {
  return adjusted_mu(mu, d) <= 0 && sigma >= subdomain_bound(b) - bound_eps;
}

// b = 1: the f-supremum is the right-wing limit 1/(gamma/2 - mu) with gamma = 0.
inline double unit_slope_bound(double mu) { return -1.0 / mu; }

inline DomainCertificate certify(const VanishingParams& p) {
  if (!std::isfinite(p.b) || !std::isfinite(p.mu) || !std::isfinite(p.sigma))
    throw InvalidParams("vanishing: parameters must be finite");
  if (!(p.b > 0)) throw InvalidParams("vanishing: requires b > 0");
  if (!(p.sigma > 0)) throw InvalidParams("vanishing: requires sigma > 0");
  if (p.b > 1 + bound_eps) throw RogerLeeViolation("vanishing: requires b <= 1");

  auto c = make_certificate(p.direction == Direction::upward ? Family::vanishing_upward
                                                              : Family::vanishing_downward,
                            p.to_raw());
  double mu = adjusted_mu(p.mu, p.direction);
  double fb = fukasawa_bound(std::min(p.b, 1.0));
  if (p.direction == Direction::upward) {
    c.mu_upper = fb;
  } else {
    c.mu_lower = -fb;
  }
  if (!(mu < fb)) throw FukasawaViolation("vanishing: mu must stay below sqrt(3(1-b))");

  if (p.b >= 1 - bound_eps) {
    apply_sigma_bound(c, p.sigma, unit_slope_bound(mu));
    return c;
  }
  auto xr = x_from_mu(mu, p.b);
  double ms = detail::mu_star_xu(xr.x, xr.u, p.b);
  c.diagnostics["x"] = xr.x;
  c.diagnostics["mu_star_residual"] = ms - mu;
  if (xr.clamped) c.on_boundary = true;
  apply_sigma_bound(c, p.sigma, detail::sigma_star_xu(xr.x, xr.u, p.b));
  return c;
}

}  // namespace smile_domain::vanishing
