#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "core_svi.hpp"
#include "errors.hpp"
#include "fukasawa.hpp"
#include "numerics.hpp"
#include "sigma_star_oracle.hpp"

namespace smile_domain {

enum class Family {
  vanishing_upward,
  vanishing_downward,
  extremal_decorrelated,
  symmetric,
  ssvi,
  generic
};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::vanishing_upward: return "vanishing-up";
    case Family::vanishing_downward: return "vanishing-down";
    case Family::extremal_decorrelated: return "extremal";
    case Family::symmetric: return "symmetric";
    case Family::ssvi: return "ssvi";
    case Family::generic: return "svi";
  }
  return "?";
}

struct DomainCertificate {
  Family family = Family::generic;
  RawSviParams raw;
  NormalizedSvi normalized;
  bool roger_lee = true;
  bool fukasawa = true;
  bool sigma_bound = false;
  double sigma_star = std::numeric_limits<double>::quiet_NaN();
  double mu_lower = -inf;
  double mu_upper = inf;
  bool on_boundary = false;
  std::string uniqueness;  // set for families whose sigma* relies on a numerical argument
  std::string note;
  std::map<std::string, double> diagnostics;

  bool arbitrage_free() const { return roger_lee && fukasawa && sigma_bound; }
};

inline DomainCertificate make_certificate(Family family, const RawSviParams& raw) {
  DomainCertificate c;
  c.family = family;
  c.raw = raw;
  if (raw.b > 0 && raw.sigma > 0) {
    c.normalized = normalize(raw);
  } else {
    c.normalized.b = raw.b;
    c.normalized.rho = raw.rho;
    c.normalized.sigma = raw.sigma;
  }
  return c;
}

// Records sigma >= bound (non-strict, eps-tolerant) and boundary membership.
inline void apply_sigma_bound(DomainCertificate& c, double sigma, double bound) {
  c.sigma_star = bound;
  c.sigma_bound = sigma >= bound - bound_eps;
  c.on_boundary = c.on_boundary || near(sigma, bound);
}

// Runs a family certify; a violated necessary condition becomes a failing
// certificate instead of an exception.
template <class F>
DomainCertificate verdict_or_violation(Family family, const RawSviParams& raw, F&& certify_call) {
  try {
    return certify_call();
  } catch (const RogerLeeViolation& e) {
    auto c = make_certificate(family, raw);
    c.roger_lee = false;
    c.fukasawa = false;
    c.sigma_bound = false;
    c.note = e.what();
    return c;
  } catch (const FukasawaViolation& e) {
    auto c = make_certificate(family, raw);
    c.fukasawa = false;
    c.sigma_bound = false;
    c.note = e.what();
    return c;
  }
}

// Any SVI, certified through the numerical sigma* search.
inline DomainCertificate certify_generic(const RawSviParams& p, const OracleOptions& opt = {}) {
  p.validate();
  if (p.b == 0) {
    if (!(p.a > 0)) throw InvalidParams("flat smile requires a > 0");
    auto c = make_certificate(Family::generic, p);
    c.sigma_star = 0.0;
    c.sigma_bound = true;
    c.note = "flat total variance";
    return c;
  }
  if (!(p.sigma > 0)) throw InvalidParams("certify requires sigma > 0");
  auto c = make_certificate(Family::generic, p);
  const auto& s = c.normalized.shape();
  check_roger_lee(s.b, s.rho);
  if (std::abs(s.rho) < 1 && !(s.gamma + std::sqrt(1 - s.rho * s.rho) > 0))
    throw InvalidParams("total variance must be positive");
  auto I = admissible_mu(s.gamma, s.b, s.rho);
  c.mu_lower = I.lower;
  c.mu_upper = I.upper;
  if (!I.contains(s.mu)) throw FukasawaViolation("mu outside the Fukasawa interval");
  c.on_boundary = near(s.mu, I.lower) || near(s.mu, I.upper);
  auto r = sigma_star(s, opt);
  apply_sigma_bound(c, p.sigma, r.sigma_star);
  c.diagnostics["argsup_l"] = r.argsup_l;
  return c;
}

}  // namespace smile_domain
