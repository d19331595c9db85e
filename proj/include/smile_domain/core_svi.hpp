#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"
#include "numerics.hpp"

namespace smile_domain {

// Raw SVI in total-variance space: w(k) = a + b(rho(k-m) + sqrt((k-m)^2 + sigma^2)).
struct RawSviParams {
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
  double m = 0.0;
  double sigma = 0.0;

  double min_total_variance() const { return a + b * sigma * std::sqrt(1.0 - rho * rho); }

  void validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(rho) || !std::isfinite(m) ||
        !std::isfinite(sigma))
      throw InvalidParams("SVI parameters must be finite");
    if (b < 0) throw InvalidParams("SVI requires b >= 0");
    if (std::abs(rho) > 1) throw InvalidParams("SVI requires |rho| <= 1");
    if (sigma < 0) throw InvalidParams("SVI requires sigma >= 0");
    if (a == 0 && b == 0) throw InvalidParams("a = b = 0 is the trivial smile");
    if (min_total_variance() < -1e-14 * (std::abs(a) + b * sigma))
      throw InvalidParams("SVI total variance must be non-negative");
  }

  bool operator==(const RawSviParams&) const = default;
};

// Shape of a normalized smile; sigma only enters through the density functional.
struct SviShape {
  double gamma = 0.0;
  double b = 0.0;
  double rho = 0.0;
  double mu = 0.0;

  double l_star() const {
    if (std::abs(rho) >= 1) return rho > 0 ? -inf : inf;
    return -rho / std::sqrt(1.0 - rho * rho);
  }

  bool operator==(const SviShape&) const = default;
};

struct NormalizedSvi : SviShape {
  double sigma = 0.0;

  const SviShape& shape() const { return *this; }
};

inline NormalizedSvi normalize(const RawSviParams& p) {
  p.validate();
  if (p.b <= 0) throw InvalidParams("normalization requires b > 0");
  if (p.sigma <= 0) throw InvalidParams("normalization requires sigma > 0");
  NormalizedSvi n;
  n.gamma = p.a / (p.b * p.sigma);
  n.b = p.b;
  n.rho = p.rho;
  n.mu = p.m / p.sigma;
  n.sigma = p.sigma;
  return n;
}

inline RawSviParams to_raw(const NormalizedSvi& n) {
  return {n.gamma * n.b * n.sigma, n.b, n.rho, n.mu * n.sigma, n.sigma};
}

inline double total_variance(const RawSviParams& p, double k) {
  double d = k - p.m;
  return p.a + p.b * (p.rho * d + std::hypot(d, p.sigma));
}

// Mirror smile k -> -k. Arbitrage status is preserved.
inline RawSviParams invert(const RawSviParams& p) { return {p.a, p.b, -p.rho, -p.m, p.sigma}; }
inline SviShape invert(const SviShape& s) { return {s.gamma, s.b, -s.rho, -s.mu}; }
inline NormalizedSvi invert(const NormalizedSvi& n) {
  NormalizedSvi r;
  static_cast<SviShape&>(r) = invert(n.shape());
  r.sigma = n.sigma;
  return r;
}

struct EvalPoint {
  double l;
  double x;  // l / sqrt(l^2+1)
  double z;  // 1 / sqrt(l^2+1)
};

inline EvalPoint make_eval_point(double l) {
  double s = std::hypot(l, 1.0);
  return {l, l / s, 1.0 / s};
}

inline double l_from_x(double x) { return x / std::sqrt((1.0 - x) * (1.0 + x)); }
inline double l_from_z(double z) { return std::sqrt((1.0 - z) * (1.0 + z)) / z; }

struct NFuncs {
  double N;
  double N1;
  double N2;
  double N3;
};

// rho*l + sqrt(l^2+1), rationalized when the two terms have opposite sign.
inline double rho_l_plus_s(double l, double rho, double s) {
  if (rho * l < 0) return (1.0 + l * l * (1.0 - rho * rho)) / (s - rho * l);
  return rho * l + s;
}

// rho + l/sqrt(l^2+1), rationalized when the two terms have opposite sign.
inline double n_prime(double l, double rho, double s) {
  if (rho * l < 0) return (rho * rho - l * l * (1.0 - rho * rho)) / (s * (rho * s - l));
  return rho + l / s;
}

// N(l) = gamma + rho l + sqrt(l^2+1) and its first three derivatives.
inline NFuncs n_funcs(double l, double gamma, double rho) {
  double s = std::hypot(l, 1.0);
  double z = 1.0 / s;
  double z2 = z * z;
  NFuncs r;
  r.N = gamma + rho_l_plus_s(l, rho, s);
  r.N1 = n_prime(l, rho, s);
  r.N2 = z2 * z;
  r.N3 = -3.0 * l * z2 * z2 * z;
  return r;
}

struct Hgg2 {
  double h;
  double g;
  double g2;
};

inline Hgg2 hgg2(double l, const SviShape& s) {
  auto n = n_funcs(l, s.gamma, s.rho);
  if (!(n.N > 0)) throw DomainError("hgg2: N(l) vanishes");
  return {1.0 - n.N1 * (l + s.mu) / (2.0 * n.N), n.N1 / 4.0, n.N2 - n.N1 * n.N1 / (2.0 * n.N)};
}

struct G1Parts {
  double G1;
  double G1plus;
  double G1minus;
};

// 1 - b(1+rho)/2 with the rounding of 1+rho and b(1+rho) compensated, so the
// Roger Lee boundary distance keeps full relative precision.
inline double wing_gap(double b, double rho) {
  double p = 1.0 + rho;
  double ep = std::abs(rho) <= 1.0 ? (1.0 - p) + rho : (rho - p) + 1.0;
  double w = b * p;
  double ew = std::fma(b, p, -w) + b * ep;
  return (1.0 - 0.5 * w) - 0.5 * ew;
}

// G1+- on l >= 0 as polynomials in u = 1 - x and z, free of the large-l
// cancellation in h^2 - b^2 g^2. The left wing follows by mirroring.
inline G1Parts g1(double l, const SviShape& s) {
  if (l < 0) {
    auto m = g1(-l, invert(s));
    return {m.G1, m.G1minus, m.G1plus};
  }
  double sq = std::hypot(l, 1.0);
  double u = 1.0 / (sq * (sq + l));
  double z = 1.0 / sq;
  double r1 = 1.0 + s.rho;
  double B = r1 + s.gamma * z - s.rho * u;
  if (!(B > 0)) throw DomainError("g1: N(l) vanishes");
  auto numer = [&](double bb, double c0) {
    double hb = 0.5 * bb;
    return c0 + (2.0 - s.rho + hb * r1 * r1) * u + (2.0 * s.gamma - r1 * s.mu - hb * r1 * s.gamma) * z +
           (-1.0 - hb * s.rho) * u * u + (s.mu + hb * s.gamma) * u * z;
  };
  double plus = numer(s.b, r1 * wing_gap(s.b, s.rho)) / (2.0 * B);
  double minus = numer(-s.b, r1 * wing_gap(-s.b, s.rho)) / (2.0 * B);
  return {plus * minus, plus, minus};
}

// f = -b g2 / (2 G1); sigma must dominate f everywhere outside the g2 zeros.
inline double objective_f(double l, const SviShape& s) {
  return -s.b * hgg2(l, s).g2 / (2.0 * g1(l, s).G1);
}

// f~ = -G1 / g2, so that sup f = b / (2 inf f~).
inline double objective_f_tilde(double l, const SviShape& s) {
  return -g1(l, s).G1 / hgg2(l, s).g2;
}

// G1 + b g2 / (2 sigma): non-negative everywhere iff the density is.
inline double durrleman_functional(double l, const NormalizedSvi& n) {
  return g1(l, n.shape()).G1 + n.b * hgg2(l, n.shape()).g2 / (2.0 * n.sigma);
}

}  // namespace smile_domain
