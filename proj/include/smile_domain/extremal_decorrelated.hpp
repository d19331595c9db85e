#pragma once

#include <cmath>

#include "certificate.hpp"
#include "core_svi.hpp"
#include "errors.hpp"

// b = 2, rho = 0: w(k) = 2 sigma (gamma + sqrt((k/sigma - q gamma)^2 + 1)).
namespace smile_domain::extremal {

struct ExtremalParams {
  double gamma = 1.0;
  double q = 0.0;
  double sigma = 1.0;

  double mu() const { return q * gamma; }

  RawSviParams to_raw() const { return {2 * sigma * gamma, 2.0, 0.0, q * gamma * sigma, sigma}; }

  static ExtremalParams from_raw(const RawSviParams& p) {
    if (p.b != 2 || p.rho != 0) throw InvalidParams("extremal smile requires b = 2, rho = 0");
    if (!(p.sigma > 0)) throw InvalidParams("extremal smile requires sigma > 0");
    double gamma = p.a / (2 * p.sigma);
    if (!(gamma > 0)) throw InvalidParams("extremal smile requires a > 0");
    return {gamma, p.m / (p.sigma * gamma), p.sigma};
  }

  void validate() const {
    if (!std::isfinite(gamma) || !std::isfinite(q) || !std::isfinite(sigma))
      throw InvalidParams("extremal: parameters must be finite");
    if (!(gamma > 0)) throw InvalidParams("extremal: requires gamma > 0");
    if (!(std::abs(q) < 1)) throw InvalidParams("extremal: requires |q| < 1");
    if (!(sigma > 0)) throw InvalidParams("extremal: requires sigma > 0");
  }
};

inline double sigma_bound(double gamma, double q) {
  if (!(gamma > 0) || !(std::abs(q) < 1)) throw InvalidParams("extremal: requires gamma > 0, |q| < 1");
  return 1 / (gamma * (1 - std::abs(q)));
}

inline DomainCertificate certify(const ExtremalParams& p) {
  p.validate();
  auto c = make_certificate(Family::extremal_decorrelated, p.to_raw());
  c.mu_lower = -p.gamma;
  c.mu_upper = p.gamma;
  apply_sigma_bound(c, p.sigma, sigma_bound(p.gamma, p.q));
  return c;
}

}  // namespace smile_domain::extremal
