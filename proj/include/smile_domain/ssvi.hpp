#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "certificate.hpp"
#include "core_svi.hpp"
#include "errors.hpp"
#include "fukasawa.hpp"
#include "numerics.hpp"

namespace smile_domain::ssvi {

// w(k) = theta/2 (1 + rho phi k + sqrt((phi k + rho)^2 + 1 - rho^2)).
struct SsviParams {
  double theta = 0.1;
  double phi = 1.0;
  double rho = 0.0;

  void validate() const {
    if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(rho))
      throw InvalidParams("ssvi: parameters must be finite");
    if (!(theta > 0)) throw InvalidParams("ssvi: requires theta > 0");
    if (!(phi > 0)) throw InvalidParams("ssvi: requires phi > 0");
    if (!(std::abs(rho) < 1)) throw InvalidParams("ssvi: requires |rho| < 1");
  }

  double b() const { return theta * phi / 2; }
  double sigma() const { return std::sqrt(1 - rho * rho) / phi; }

  RawSviParams to_raw() const {
    return {theta * (1 - rho * rho) / 2, b(), rho, -rho / phi, sigma()};
  }

  // Inverse of (b, sigma) = (theta phi / 2, sqrt(1-rho^2) / phi).
  static SsviParams from_svi_form(double b, double rho, double sigma) {
    if (!(std::abs(rho) < 1) || !(sigma > 0) || !(b > 0))
      throw InvalidParams("ssvi: requires b > 0, sigma > 0, |rho| < 1");
    double phi = std::sqrt(1 - rho * rho) / sigma;
    return {2 * b / phi, phi, rho};
  }
};

inline SviShape shape(double b, double rho) {
  return {std::sqrt(1 - rho * rho), b, rho, -rho / std::sqrt(1 - rho * rho)};
}

inline void check_rho_unit(double rho) {
  if (!(rho >= 0 && rho <= 1)) throw InvalidParams("ssvi: this form requires rho in [0, 1]");
}

// x(rho) = l2 / sqrt(l2^2+1): root of 4x^3 - 3x + rho in [1/2, sqrt(3)/2].
inline double x2_closed(double rho) {
  check_rho_unit(rho);
  return std::cos(std::acos(-rho) / 3);
}

inline double l2_closed(double rho) {
  check_rho_unit(rho);
  return 1 / std::tan(std::acos(-rho) / 3);
}

// Family functions in x = l / sqrt(l^2+1).
inline double big_n_x(double x, double rho) {
  return (1 + rho * x) / std::sqrt(1 - x * x) + std::sqrt(1 - rho * rho);
}
inline double h_x(double x, double rho) {
  return (1 + std::sqrt((1 - x * x) / (1 - rho * rho))) / 2;
}
inline double h_x_prime(double x, double rho) {
  return -x / (2 * std::sqrt(1 - rho * rho) * std::sqrt(1 - x * x));
}
inline double h_x_second(double x, double rho) {
  return -1 / (2 * std::sqrt(1 - rho * rho) * std::pow(1 - x * x, 1.5));
}
inline double g_x(double x, double rho) { return (x + rho) / 4; }
inline double j2_x(double x, double rho) {
  return std::pow(1 - x * x, 1.5) - (x + rho) * (x + rho) / (2 * big_n_x(x, rho));
}
inline double j2_x_prime(double x, double rho) {
  double P = big_n_x(x, rho);
  double s = x + rho;
  return -3 * x * std::sqrt(1 - x * x) - s / P + s * s * s / (2 * P * P * std::pow(1 - x * x, 1.5));
}

// d^2 j2 / dx^2, expanded symbolically.
inline double j2_x_second(double x, double rho) {
  const double R = std::sqrt(1 - rho * rho);
  const double S = std::sqrt(1 - x * x);
  const double U = rho * x + R * S + 1;
  const double V = rho * S - x * R;
  const double W = rho + 3 * x * U + x;
  const double s = rho + x;
  const double A = s * s * s + 2 * (x * x - 1) * W * U;
  const double num =
      x * A * U - 2 * S * V * A +
      S * U *
          (S * (4 * x * W * U + 3 * s * s) + 2 * (x * x - 1) * V * W +
           2 * (x * x - 1) * (3 * x * V + S * (3 * rho * x + 3 * R * S + 4)) * U);
  return num / (2 * S * S * S * U * U * U);
}

// n = J1 j2'' - J1'' j2 in x, whose positivity gives a unique critical point of f~.
inline double n_value(double x, double b, double rho) {
  double h = h_x(x, rho);
  double g = g_x(x, rho);
  double hp = h_x_prime(x, rho);
  return -2 * (hp * hp + h * h_x_second(x, rho) - b * b / 16) * j2_x(x, rho) +
         (h * h - b * b * g * g) * j2_x_second(x, rho);
}

inline double rho_of_m2(double x) {
  double x2 = x * x;
  return x * (-12 * x2 * x2 + 16 * x2 - 5 + 2 * (1 - x2) * std::sqrt(36 * x2 * x2 - 24 * x2 + 1));
}

inline double m2_lower() { return (2 + std::sqrt(10.0)) / 6; }                       // rho = 1
inline double m2_upper() { return std::sqrt(std::sqrt(7.0) / 18 + 7.0 / 9); }         // rho = 0

// Minimizer of j2 in x, by inverting the decreasing map x -> rho(x).
inline double m2(double rho) {
  double r = std::clamp(rho, 0.0, 1.0);
  if (r == 0) return m2_upper();
  if (r == 1) return m2_lower();
  return bisect([&](double x) { return rho_of_m2(x) - r; }, m2_lower(), m2_upper());
}

// Numerator of eta j2' - 2 eta' j2 in x; its root is the b -> 0 critical point.
inline double b0_numerator(double x, double rho) {
  double r2 = rho * rho;
  double x2 = x * x;
  double x3 = x2 * x;
  double x4 = x2 * x2;
  double x5 = x4 * x;
  double x6 = x3 * x3;
  double a = -4 * rho * x6 + 2 * (6 * r2 - 5) * x5 + 24 * rho * x4 + (31 - 14 * r2) * x3 -
             13 * rho * x2 + 5 * (r2 - 4) * x + rho * (r2 - 4);
  double c = 2 * (2 * r2 - 1) * x5 + 4 * rho * (4 - 3 * r2) * x4 + (21 - 22 * r2) * x3 +
             rho * (8 * r2 - 15) * x2 + 5 * (3 * r2 - 4) * x + rho * (3 * r2 - 4);
  return std::sqrt(1 - r2) * a + std::sqrt(1 - x2) * c;
}

inline double x_bar_zero(double rho) {
  check_rho_unit(rho);
  if (rho == 1) return 1.0;
  double lo = std::max(x2_closed(rho), rho);
  return bisect([&](double x) { return b0_numerator(x, rho); }, lo, 1.0);
}

// Left end of the critical-point range: b*(l_bar) = 0.
inline double l_bar_zero(double rho) {
  double x = x_bar_zero(rho);
  if (x >= 1) return inf;
  return l_from_x(x);
}

struct LocalTerms {
  double h, hp, g, gp, g2, g2p;
};

inline LocalTerms local_terms(double l, double rho) {
  auto s = shape(0.0, rho);
  auto n = n_funcs(l, s.gamma, rho);
  double lm = l + s.mu;
  LocalTerms t;
  t.h = 1 - n.N1 * lm / (2 * n.N);
  t.hp = -(n.N2 * lm + n.N1) / (2 * n.N) + n.N1 * n.N1 * lm / (2 * n.N * n.N);
  t.g = n.N1 / 4;
  t.gp = n.N2 / 4;
  t.g2 = n.N2 - n.N1 * n.N1 / (2 * n.N);
  t.g2p = n.N3 - n.N1 / n.N * t.g2;
  return t;
}

// Signed b*(l)^2 = h (h g2' - 2h' g2) / (g (g g2' - 2 g' g2)).
inline double b_star_squared(double l, double rho) {
  auto t = local_terms(l, rho);
  double p = t.h * t.g2p - 2 * t.hp * t.g2;
  double q = t.g * t.g2p - 2 * t.gp * t.g2;
  return t.h * p / (t.g * q);
}

inline double b_star(double l, double rho) {
  check_rho_unit(rho);
  if (std::isinf(l) && l > 0) return 2 / (1 + rho);
  double r = b_star_squared(l, rho);
  if (!(r >= 0)) throw DomainError("ssvi b_star: l lies left of the b = 0 boundary");
  return std::sqrt(r);
}

// sigma bound for slope b when f~ is minimal at l.
inline double sigma_star_at(double l, double rho, double b) {
  if (std::isinf(l)) return std::sqrt(1 - rho * rho);
  return objective_f(l, shape(b, rho));
}

inline double sigma_star_closed(double l, double rho) {
  return sigma_star_at(l, rho, b_star(l, rho));
}

// Critical point of f~ for slope b (rho >= 0); +inf on the wing boundary.
inline double l_from_b(double b, double rho) {
  check_rho_unit(rho);
  if (near(b * (1 + rho), 2.0)) return inf;
  double lb = l_bar_zero(rho);
  double upper = std::max(10.0, 2 * lb);
  auto resid = [&](double l) { return b_star_squared(l, rho) - b * b; };
  while (resid(upper) < 0) {
    if (upper > 1e8) return inf;
    upper *= 2;
  }
  return bisect(resid, lb, upper);
}

inline double gj_bound(double b, double rho) {
  double r = std::abs(rho);
  return b / 2 * (1 + r) * std::sqrt(1 - rho * rho);
}

inline double subdomain_bound(double b, double rho) {
  double r = std::abs(rho);
  double den = 4 - b * b * (1 + r) * (1 + r);
  if (!(den > 0)) throw InvalidParams("ssvi subdomain requires b(1+|rho|) < 2");
  return -8 * b * j2_x(m2(r), r) / den;
}

inline bool gj_sufficient(const SsviParams& p) {
  p.validate();
  double b = p.b();
  return b * (1 + std::abs(p.rho)) < 2 && p.sigma() >= gj_bound(b, p.rho) - bound_eps;
}

inline bool subdomain_check(const SsviParams& p) {
  p.validate();
  double b = p.b();
  if (!(b * (1 + std::abs(p.rho)) < 2)) return false;
  return p.sigma() >= subdomain_bound(b, p.rho) - bound_eps;
}

inline constexpr const char* uniqueness_flag = "numerically sustained";

// Certify the SSVI slice with SVI slope b, correlation rho and scale sigma.
inline DomainCertificate certify_svi_form(double b, double rho, double sigma) {
  if (!std::isfinite(b) || !std::isfinite(rho) || !std::isfinite(sigma))
    throw InvalidParams("ssvi: parameters must be finite");
  if (!(b > 0) || !(sigma > 0) || !(std::abs(rho) < 1))
    throw InvalidParams("ssvi: requires b > 0, sigma > 0, |rho| < 1");
  double r = std::abs(rho);
  auto s = shape(b, rho);
  RawSviParams raw{b * sigma * s.gamma, b, rho, s.mu * sigma, sigma};
  if (b * (1 + r) > 2 + bound_eps) throw RogerLeeViolation("ssvi: requires b(1+|rho|) <= 2");

  auto c = make_certificate(Family::ssvi, raw);
  c.uniqueness = uniqueness_flag;
  auto I = mu_interval(s.gamma, std::min(b, 2 / (1 + r)), rho);
  c.mu_lower = I.lower;
  c.mu_upper = I.upper;
  double l = l_from_b(b, r);
  c.diagnostics["l"] = l;
  apply_sigma_bound(c, sigma, sigma_star_at(l, r, std::min(b, 2 / (1 + r))));
  return c;
}

inline DomainCertificate certify(const SsviParams& p) {
  p.validate();
  return certify_svi_form(p.b(), p.rho, p.sigma());
}

struct HestonLtParams {
  double kappa = 1.0;
  double theta_bar = 0.04;
  double sigma_vol = 0.4;
  double rho = 0.0;
  double T = 1.0;

  void validate() const {
    if (!(kappa > 0) || !(theta_bar > 0) || !(sigma_vol > 0) || !(T > 0))
      throw InvalidParams("heston: kappa, theta, vol-of-vol and T must be positive");
    if (!(std::abs(rho) < 1)) throw InvalidParams("heston: requires |rho| < 1");
  }
};

namespace detail {
inline double heston_a(const HestonLtParams& h) { return 2 * h.kappa - h.rho * h.sigma_vol; }
inline double heston_r(const HestonLtParams& h) {
  double a = heston_a(h);
  return std::sqrt(a * a + h.sigma_vol * h.sigma_vol * (1 - h.rho * h.rho));
}
}  // namespace detail

// Limiting SVI slope, maturity independent.
inline double heston_b(const HestonLtParams& h) {
  double A = detail::heston_a(h);
  double R = detail::heston_r(h);
  if (A > 0) return 2 * h.sigma_vol / (R + A);
  return 2 / (h.sigma_vol * (1 - h.rho * h.rho)) * (R - A);
}

inline SsviParams to_ssvi(const HestonLtParams& h) {
  h.validate();
  double A = detail::heston_a(h);
  double R = detail::heston_r(h);
  double kt = h.kappa * h.theta_bar * h.T;
  double theta = A > 0 ? 4 * kt / (R + A)
                       : 4 * kt / (h.sigma_vol * h.sigma_vol * (1 - h.rho * h.rho)) * (R - A);
  return {theta, h.sigma_vol / kt, h.rho};
}

// Smallest maturity for which the limiting slice lies in the explicit sub-domain.
inline double lt_heston_threshold(const HestonLtParams& h) {
  h.validate();
  double b = heston_b(h);
  double r = std::abs(h.rho);
  double den = 4 - b * b * (1 + r) * (1 + r);
  if (!(den > 0)) throw InvalidParams("heston: requires b(1+|rho|) < 2");
  return -8 * b * h.sigma_vol * j2_x(m2(r), r) /
         (h.kappa * h.theta_bar * std::sqrt(1 - h.rho * h.rho) * den);
}

struct ScanReport {
  double min_n = inf;
  double argmin_rho = 0.0;
  double argmin_x = 0.0;
  long long non_positive = 0;
  bool pass() const { return non_positive == 0; }
  std::string verdict() const { return pass() ? "There is unicity" : "No unicity"; }
};

// Grid check of n > 0 at b = 2/(1+rho), rho in [0, 0.999], x in [x_m2(1), 0.999].
inline ScanReport scan_uniqueness(int rho_steps = 1000, int x_steps = 1000, int threads = 1) {
  if (rho_steps < 1 || x_steps < 1) throw InvalidParams("scan: grid sizes must be positive");
  auto rhos = linspace(0.0, 0.999, static_cast<std::size_t>(rho_steps));
  auto xs = linspace(m2_lower(), 0.999, static_cast<std::size_t>(x_steps));
  auto run_rows = [&](std::size_t r0, std::size_t r1) {
    ScanReport rep;
    for (std::size_t i = r0; i < r1; ++i) {
      double rho = rhos[i];
      double b = 2 / (1 + rho);
      for (double x : xs) {
        double n = n_value(x, b, rho);
        if (!(n > 0)) ++rep.non_positive;
        if (n < rep.min_n) {
          rep.min_n = n;
          rep.argmin_rho = rho;
          rep.argmin_x = x;
        }
      }
    }
    return rep;
  };
  int nt = std::clamp(threads, 1, rho_steps);
  std::vector<ScanReport> parts(static_cast<std::size_t>(nt));
  std::vector<std::thread> pool;
  std::size_t rows = rhos.size();
  for (int t = 0; t < nt; ++t) {
    std::size_t r0 = rows * static_cast<std::size_t>(t) / static_cast<std::size_t>(nt);
    std::size_t r1 = rows * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(nt);
    if (nt == 1)
      parts[0] = run_rows(r0, r1);
    else
      pool.emplace_back([&, t, r0, r1] { parts[static_cast<std::size_t>(t)] = run_rows(r0, r1); });
  }
  for (auto& th : pool) th.join();
  // Chunks are reduced in row order with a strict comparison, matching the sequential scan.
  ScanReport total;
  for (const auto& p : parts) {
    total.non_positive += p.non_positive;
    if (p.min_n < total.min_n) {
      total.min_n = p.min_n;
      total.argmin_rho = p.argmin_rho;
      total.argmin_x = p.argmin_x;
    }
  }
  return total;
}

}  // namespace smile_domain::ssvi
