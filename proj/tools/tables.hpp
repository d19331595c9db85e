#pragma once

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "cli_json.hpp"

namespace smile_domain::cli {

struct TableSpec {
  std::string id;
  std::string description;
  std::function<void(std::ostream&)> write;
};

namespace tables {

inline void row(std::ostream& os, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    os << (first ? "" : ",") << csv(v);
    first = false;
  }
  os << '\n';
}

// Swallows domain failures into NaN so a table keeps its shape.
template <class F>
double guarded(F&& f) {
  try {
    return f();
  } catch (const SmileDomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

inline void vanishing_subdomain(std::ostream& os) {
  os << "b,subdomain_bound,x_mu_zero,sigma_star_mu_zero,x_mid,sigma_star_mid,sigma_star_x099\n";
  for (int i = 1; i <= 19; ++i) {
    double b = 0.05 * i;
    auto xr = vanishing::x_from_mu(0.0, b);
    double x_mid = 0.5 * (xr.x + 0.99);
    row(os, {b, vanishing::subdomain_bound(b), xr.x, vanishing::sigma_star_closed(xr.x, b), x_mid,
             vanishing::sigma_star_closed(x_mid, b), vanishing::sigma_star_closed(0.99, b)});
  }
}

inline void symmetric_zstar(std::ostream& os, double g_lo, double g_hi, int n) {
  os << "gamma,z_star_b0,z_star_gtilde,g_tilde\n";
  for (double g : linspace(g_lo, g_hi, static_cast<std::size_t>(n))) {
    row(os, {g, guarded([&] { return symmetric::z_star_b0(g); }),
             guarded([&] { return symmetric::z_star_gtilde(g); }), symmetric::g_tilde(g)});
  }
}

// +-sqrt(Gamma_+-) z2(+-sqrt(Gamma_+-)) / u; admissible where it exceeds 1.
inline void gamma_admissibility(std::ostream& os) {
  os << "u,gamma_plus,ratio_plus,gamma_minus,ratio_minus\n";
  auto ratio = [](double gamma, double u) {
    if (!std::isfinite(gamma) || !(gamma > -1)) return std::numeric_limits<double>::quiet_NaN();
    return gamma * symmetric::z2(gamma) / u;
  };
  for (double u : linspace(-0.99, 3.0, 400)) {
    if (std::abs(u) < 1e-12) continue;
    double base = 6 * u * u * u + 15 * u * u + 14 * u + 6;
    double rad = (1 + u) * (1 + u) * std::sqrt(3 * (12 * u * u + 12 * u + 11));
    double sgn = u > 0 ? 1.0 : -1.0;
    double gp_sq = u * u * (base + rad);
    double gm_sq = u * u * (base - rad);
    double gp = gp_sq >= 0 ? sgn * std::sqrt(gp_sq) : std::numeric_limits<double>::quiet_NaN();
    double gm = gm_sq >= 0 ? sgn * std::sqrt(gm_sq) : std::numeric_limits<double>::quiet_NaN();
    row(os, {u, gp, ratio(gp, u), gm, ratio(gm, u)});
  }
}

inline void symmetric_proof(std::ostream& os) {
  os << "gamma,z_i2,J1_prime_b2\n";
  for (double g : linspace(-0.995, -0.005, 199)) {
    double z = symmetric::z_i2(g);
    row(os, {g, z, symmetric::J1_prime(z, g, 2.0)});
  }
}

inline void ssvi_n_curves(std::ostream& os) {
  os << "rho,x,n\n";
  for (double rho : {0.0, 0.25, 0.5, 0.75, 0.999}) {
    double b = 2 / (1 + rho);
    for (double x : linspace(ssvi::m2_lower(), 0.999, 200)) row(os, {rho, x, ssvi::n_value(x, b, rho)});
  }
}

inline double ssvi_exact(double b, double rho) { return ssvi::certify_svi_form(b, rho, 1.0).sigma_star; }

inline void ssvi_gj_vs_b(std::ostream& os) {
  os << "rho,b,gj_bound,subdomain_bound,sigma_star\n";
  for (double rho : {0.2, 0.6}) {
    double bmax = 2 / (1 + rho);
    for (int i = 1; i <= 60; ++i) {
      double b = bmax * i / 61.0;
      row(os, {rho, b, ssvi::gj_bound(b, rho), ssvi::subdomain_bound(b, rho), ssvi_exact(b, rho)});
    }
  }
}

inline void ssvi_gj_vs_rho(std::ostream& os) {
  os << "b,rho,gj_bound,subdomain_bound,sigma_star\n";
  for (double b : {0.5, 1.2}) {
    double rmax = std::min(1.0, 2 / b - 1);
    for (int i = 1; i <= 60; ++i) {
      double rho = rmax * i / 61.0;
      row(os, {b, rho, ssvi::gj_bound(b, rho), ssvi::subdomain_bound(b, rho), ssvi_exact(b, rho)});
    }
  }
}

}  // namespace tables

inline const std::vector<TableSpec>& table_specs() {
  static const std::vector<TableSpec> specs{
      {"vanishing-subdomain", "vanishing sub-domain bound against sigma* at three x per b", tables::vanishing_subdomain},
      {"symmetric-zstar", "z* interval ends for gamma in [-0.99999, -0.98]",
       [](std::ostream& os) { tables::symmetric_zstar(os, -0.99999, -0.98, 101); }},
      {"symmetric-zstar-wide", "z* interval ends for gamma in [-0.999, 0.4]",
       [](std::ostream& os) { tables::symmetric_zstar(os, -0.999, 0.4, 141); }},
      {"gamma-admissibility", "admissibility ratios of the gamma roots against u", tables::gamma_admissibility},
      {"symmetric-proof", "J1' at the inflection point of j2 with b = 2", tables::symmetric_proof},
      {"ssvi-n-curves", "n at b = 2/(1+rho) beyond x_m2(1) for several rho", tables::ssvi_n_curves},
      {"ssvi-gj-vs-b", "Gatheral-Jacquier and sub-domain bounds against sigma* in b", tables::ssvi_gj_vs_b},
      {"ssvi-gj-vs-rho", "Gatheral-Jacquier and sub-domain bounds against sigma* in rho", tables::ssvi_gj_vs_rho},
  };
  return specs;
}

}  // namespace smile_domain::cli
