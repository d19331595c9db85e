#pragma once

#include <cmath>
#include <numbers>

#include "certificate.hpp"
#include "core_svi.hpp"
#include "errors.hpp"
#include "numerics.hpp"

// Symmetric smiles rho = m = 0, written in z = 1/sqrt(l^2+1) on the right wing.
namespace smile_domain::symmetric {

struct SymmetricParams {
  double gamma = 0.0;
  double b = 1.0;
  double sigma = 1.0;

  RawSviParams to_raw() const { return {gamma * b * sigma, b, 0.0, 0.0, sigma}; }

  static SymmetricParams from_raw(const RawSviParams& p) {
    if (p.rho != 0 || p.m != 0) throw InvalidParams("symmetric smile requires rho = m = 0");
    if (!(p.b > 0 && p.sigma > 0)) throw InvalidParams("symmetric smile requires b, sigma > 0");
    return {p.a / (p.b * p.sigma), p.b, p.sigma};
  }
};

// The gamma at which the two ends of the z* interval meet.
inline double gamma_hat() { return -std::sqrt((9 + 5 * std::sqrt(3.0)) / 18); }
inline double z_hat() { return std::sqrt((3 - std::sqrt(3.0)) / 2); }
inline double g_tilde_hat() { return 2 * std::sqrt(3 * std::sqrt(3.0) - 5); }

// F~(b): Fukasawa holds iff gamma > F~(b).
inline double fukasawa_threshold_closed(double b) {
  if (!(b >= 0 && b <= 2)) throw InvalidParams("symmetric threshold requires 0 <= b <= 2");
  double b2 = b * b;
  return -(b2 + 32) * std::sqrt(4 - b2) / std::pow(16 - b2, 1.5);
}

inline double clamp_unit(double v) {
  if (v > 1 && v < 1 + 1e-14) return 1;
  if (v < -1 && v > -1 - 1e-14) return -1;
  return v;
}

// Inverse of F~ on ]-1, 0], extended by 2 for gamma > 0.
inline double g_tilde(double gamma) {
  if (!(gamma > -1)) throw DomainError("g_tilde requires gamma > -1");
  if (gamma > 0) return 2.0;
  double g2 = gamma * gamma;
  // The trigonometric form is 0/0 as gamma -> -1 and acos near -1 amplifies rounding;
  // invert the increasing F~ directly there.
  if (1 - g2 < 1e-2)
    return bisect([&](double b) { return fukasawa_threshold_closed(b) - gamma; }, 0.0, 2.0);
  double r = std::sqrt(8 * g2 + 1);
  double c = std::cos(std::acos(clamp_unit(-(8 * g2 * g2 + 20 * g2 - 1) / (r * r * r))) / 3);
  double inner = (6 * r * c - 4 * g2 - 5) / (1 - g2);
  return 2 * std::sqrt(std::max(inner, 0.0));
}

// Diagnostic threshold: j2(z+*(b)) > 0 iff gamma > M(b).
inline double m_threshold(double b) {
  double b2 = b * b;
  return -(b2 * b2 - 38 * b2 + 64) * (b2 + 8) / (std::pow(4 - b2, 1.5) * std::pow(16 - b2, 1.5));
}

inline double j2(double z, double gamma) {
  return z * (2 * gamma * z * z * z + 3 * z * z - 1) / (2 * (gamma * z + 1));
}
inline double j2_prime(double z, double gamma) {
  double d = gamma * z + 1;
  return (6 * gamma * gamma * z * z * z * z + 14 * gamma * z * z * z + 9 * z * z - 1) / (2 * d * d);
}
inline double j2_second(double z, double gamma) {
  double d = gamma * z + 1;
  double g = gamma;
  return (6 * g * g * g * z * z * z * z + 19 * g * g * z * z * z + 21 * g * z * z + 9 * z + g) /
         (d * d * d);
}
inline double eta(double z, double gamma) { return 1 - (1 - z * z) / (2 * (1 + gamma * z)); }
inline double eta_prime(double z, double gamma) {
  double d = 1 + gamma * z;
  return (gamma * z * z + 2 * z + gamma) / (2 * d * d);
}
inline double j(double z) { return std::sqrt((1 - z) * (1 + z)) / 4; }
inline double j_prime(double z) { return -z / (4 * std::sqrt((1 - z) * (1 + z))); }

// J1 = eta^2 - b^2 j^2 and its z-derivative.
inline double J1(double z, double gamma, double b) {
  double e = eta(z, gamma);
  return e * e - b * b * (1 - z * z) / 16;
}
inline double J1_prime(double z, double gamma, double b) {
  return 2 * eta(z, gamma) * eta_prime(z, gamma) + b * b * z / 8;
}

// Zero of j2 in (0, 1).
inline double z2(double gamma) {
  if (!(gamma > -1)) throw DomainError("z2 requires gamma > -1");
  const double pi = std::numbers::pi;
  if (gamma < 0)
    return -std::cos(std::acos(clamp_unit(1 - 2 * gamma * gamma)) / 3 - 2 * pi / 3) / gamma -
           1 / (2 * gamma);
  if (gamma == 0) return 1 / std::sqrt(3.0);
  if (gamma <= 1)
    return std::cos(std::acos(clamp_unit(2 * gamma * gamma - 1)) / 3) / gamma - 1 / (2 * gamma);
  return std::cosh(std::acosh(2 * gamma * gamma - 1) / 3) / gamma - 1 / (2 * gamma);
}

// Numerator whose root in (0, z2) is the critical point as b -> 0.
inline double p_poly(double z, double gamma) {
  double g = gamma;
  double z2_ = z * z;
  return 2 * g * g * z2_ * z2_ * z2_ + 12 * g * g * g * z2_ * z2_ * z + 3 * z2_ * z2_ * (10 * g * g - 1) +
         28 * g * z2_ * z + 12 * z2_ - 1;
}

inline double z_star_b0(double gamma) {
  double hi = z2(gamma);
  return bisect([&](double z) { return p_poly(z, gamma); }, 0.0, hi);
}

// Critical point as b -> G~(gamma).
inline double z_star_gtilde(double gamma) {
  double G = g_tilde(gamma);
  double G2 = G * G;
  return std::sqrt(std::max((4 - G2) * (16 - G2), 0.0)) / (G2 + 8);
}

// gamma such that z*(gamma, 0) = u / gamma.
inline double gamma_star(double u) {
  if (!(u > -1)) throw DomainError("gamma_star requires u > -1");
  double inner = 6 * u * u * u + 15 * u * u + 14 * u + 6 +
                 (1 + u) * (1 + u) * std::sqrt(3 * (12 * u * u + 12 * u + 11));
  return u * std::sqrt(inner);
}

// z*(gamma*(u), 0), with the u -> 0 limit.
inline double z_star_b0_of_u(double u) {
  if (u == 0) return 1 / std::sqrt(6 + std::sqrt(33.0));
  return u / gamma_star(u);
}

// Signed b*^2: positive exactly where z is a critical point of f~ for some b.
inline double b_star_squared(double z, double gamma) {
  double e = eta(z, gamma);
  double ep = eta_prime(z, gamma);
  double q2 = j2(z, gamma);
  double q2p = j2_prime(z, gamma);
  double jj = j(z);
  double jp = j_prime(z);
  return e * (e * q2p - 2 * ep * q2) / (jj * (jj * q2p - 2 * jp * q2));
}

inline double b_star(double z, double gamma) {
  double r = b_star_squared(z, gamma);
  if (!(r > 0)) throw DomainError("b_star: z is not a critical point for any admissible b");
  return std::sqrt(r);
}

// sigma bound for slope b when f~ is minimal at z.
inline double sigma_star_at(double z, double gamma, double b) {
  double jz = j(z);
  double e = eta(z, gamma);
  return -b * j2(z, gamma) / (2 * (e * e - b * b * jz * jz));
}

inline double sigma_star_closed(double z, double gamma) {
  return sigma_star_at(z, gamma, b_star(z, gamma));
}

inline double sigma_star_hat(double b) { return sigma_star_at(z_hat(), gamma_hat(), b); }

struct ZInterval {
  double b0_end;      // z where b* -> 0
  double gtilde_end;  // z where b* -> G~(gamma)
  double lo() const { return std::min(b0_end, gtilde_end); }
  double hi() const { return std::max(b0_end, gtilde_end); }
  double width() const { return hi() - lo(); }
};

inline ZInterval z_interval(double gamma) { return {z_star_b0(gamma), z_star_gtilde(gamma)}; }

// Critical point z of f~ for slope b, by bisection of the monotone b*.
inline double z_from_b(double b, double gamma) {
  auto I = z_interval(gamma);
  return bisect([&](double z) { return b_star_squared(z, gamma) - b * b; }, I.b0_end, I.gtilde_end);
}

// Inflection point of j2 for gamma < 0.
inline double z_i2(double gamma) {
  if (!(gamma < 0 && gamma > -1)) throw DomainError("z_i2 requires -1 < gamma < 0");
  auto p3 = [&](double z) {
    double g = gamma;
    return 6 * g * g * g * z * z * z * z + 19 * g * g * z * z * z + 21 * g * z * z + 9 * z + g;
  };
  return bisect(p3, 0.0, 1.0);
}

inline constexpr double gamma_hat_tolerance = 1e-9;

inline DomainCertificate certify(const SymmetricParams& p) {
  if (!std::isfinite(p.gamma) || !std::isfinite(p.b) || !std::isfinite(p.sigma))
    throw InvalidParams("symmetric: parameters must be finite");
  if (!(p.gamma > -1)) throw InvalidParams("symmetric smile must have gamma > -1");
  if (!(p.b > 0)) throw InvalidParams("symmetric: requires b > 0");
  if (!(p.sigma > 0)) throw InvalidParams("symmetric: requires sigma > 0");
  if (p.b > 2 + bound_eps) throw RogerLeeViolation("symmetric: requires b <= 2");

  auto c = make_certificate(Family::symmetric, p.to_raw());
  double b = std::min(p.b, 2.0);
  double ft = fukasawa_threshold_closed(b);
  c.diagnostics["fukasawa_threshold"] = ft;

  if (near(b, 2.0)) {
    c.mu_lower = -p.gamma;
    c.mu_upper = p.gamma;
    if (!(p.gamma > 0)) throw FukasawaViolation("symmetric b = 2 requires gamma > 0");
    apply_sigma_bound(c, p.sigma, 1 / p.gamma);
    return c;
  }
  if (!(p.gamma > ft)) throw FukasawaViolation("symmetric: gamma must exceed F~(b)");

  if (std::abs(p.gamma - gamma_hat()) <= gamma_hat_tolerance) {
    if (!(b < g_tilde_hat())) throw FukasawaViolation("symmetric: b too large at gamma hat");
    c.diagnostics["z"] = z_hat();
    apply_sigma_bound(c, p.sigma, sigma_star_hat(b));
    return c;
  }
  auto I = z_interval(p.gamma);
  double z = I.width() < 1e-10 ? z_hat() : z_from_b(b, p.gamma);
  c.diagnostics["z"] = z;
  c.diagnostics["b_star_residual"] = std::sqrt(std::max(b_star_squared(z, p.gamma), 0.0)) - b;
  apply_sigma_bound(c, p.sigma, sigma_star_at(z, p.gamma, b));
  return c;
}

}  // namespace smile_domain::symmetric
