#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cli_json.hpp"
#include "smile_domain/smile_domain.hpp"

namespace smile_domain::cli {

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"vanishing-up", "vanishing-down", "extremal",
                                              "symmetric",    "ssvi",           "svi"};
  return names;
}

inline Family family_from_name(std::string_view name) {
  if (name == "vanishing-up") return Family::vanishing_upward;
  if (name == "vanishing-down") return Family::vanishing_downward;
  if (name == "extremal") return Family::extremal_decorrelated;
  if (name == "symmetric") return Family::symmetric;
  if (name == "ssvi") return Family::ssvi;
  if (name == "svi") return Family::generic;
  throw InvalidParams("unknown family '" + std::string(name) + "'");
}

// Named numeric flags as given on the command line.
struct ParamBag {
  std::map<std::string, double> values;
  std::optional<RawSviParams> raw;

  bool has(const std::string& k) const { return values.count(k) != 0; }
  double get(const std::string& k) const {
    auto it = values.find(k);
    if (it == values.end()) throw InvalidParams("missing --" + k);
    return it->second;
  }
  void only(std::initializer_list<const char*> allowed) const {
    for (const auto& [k, v] : values) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw InvalidParams("--" + k + " does not apply to this family");
    }
  }
};

struct Certified {
  DomainCertificate cert;
  json native;
};

inline vanishing::Direction direction_of(Family f) {
  return f == Family::vanishing_upward ? vanishing::Direction::upward : vanishing::Direction::downward;
}

inline json native_json(const vanishing::VanishingParams& p) {
  return {{"b", num(p.b)},
          {"mu", num(p.mu)},
          {"sigma", num(p.sigma)},
          {"direction", p.direction == vanishing::Direction::upward ? "upward" : "downward"}};
}
inline json native_json(const extremal::ExtremalParams& p) {
  return {{"gamma", num(p.gamma)}, {"q", num(p.q)}, {"sigma", num(p.sigma)}};
}
inline json native_json(const symmetric::SymmetricParams& p) {
  return {{"gamma", num(p.gamma)}, {"b", num(p.b)}, {"sigma", num(p.sigma)}};
}
inline json native_json(const ssvi::SsviParams& p) {
  return {{"theta", num(p.theta)}, {"phi", num(p.phi)}, {"rho", num(p.rho)}};
}

// An SSVI slice in raw coordinates: gamma = sqrt(1-rho^2) and mu = l*.
inline ssvi::SsviParams ssvi_from_raw(const RawSviParams& p) {
  auto n = normalize(p);
  if (!(std::abs(n.rho) < 1)) throw InvalidParams("ssvi slice requires |rho| < 1");
  if (!is_ssvi_shape(n.shape())) throw InvalidParams("raw parameters are not an SSVI slice");
  return ssvi::SsviParams::from_svi_form(n.b, n.rho, n.sigma);
}

inline Certified certify_vanishing(Family f, const vanishing::VanishingParams& v) {
  auto c = verdict_or_violation(f, v.to_raw(), [&] { return vanishing::certify(v); });
  return {c, native_json(v)};
}
inline Certified certify_extremal(const extremal::ExtremalParams& e) {
  e.validate();
  auto c = verdict_or_violation(Family::extremal_decorrelated, e.to_raw(), [&] { return extremal::certify(e); });
  return {c, native_json(e)};
}
inline Certified certify_symmetric(const symmetric::SymmetricParams& s) {
  auto c = verdict_or_violation(Family::symmetric, s.to_raw(), [&] { return symmetric::certify(s); });
  return {c, native_json(s)};
}
inline Certified certify_ssvi(const ssvi::SsviParams& s) {
  s.validate();
  auto c = verdict_or_violation(Family::ssvi, s.to_raw(), [&] { return ssvi::certify(s); });
  return {c, native_json(s)};
}
inline Certified certify_svi(const RawSviParams& p, const OracleOptions& opt = {}) {
  p.validate();
  auto c = verdict_or_violation(Family::generic, p, [&] { return certify_generic(p, opt); });
  json native = c.normalized.b > 0 ? normalized_json(c.normalized) : json::object();
  return {c, native};
}

// Raw parameters interpreted in the named family.
inline Certified certify_from_raw(Family f, const RawSviParams& p) {
  p.validate();
  switch (f) {
    case Family::vanishing_upward:
    case Family::vanishing_downward: {
      auto v = vanishing::VanishingParams::from_raw(p);
      if (v.direction != direction_of(f)) throw InvalidParams("rho sign does not match the vanishing direction");
      return certify_vanishing(f, v);
    }
    case Family::extremal_decorrelated: return certify_extremal(extremal::ExtremalParams::from_raw(p));
    case Family::symmetric: return certify_symmetric(symmetric::SymmetricParams::from_raw(p));
    case Family::ssvi: return certify_ssvi(ssvi_from_raw(p));
    case Family::generic: return certify_svi(p);
  }
  throw InvalidParams("unknown family");
}

inline Certified certify_from_bag(Family f, const ParamBag& bag) {
  if (bag.raw) {
    bag.only({});
    return certify_from_raw(f, *bag.raw);
  }
  switch (f) {
    case Family::vanishing_upward:
    case Family::vanishing_downward: {
      bag.only({"b", "mu", "m", "sigma"});
      double sigma = bag.get("sigma");
      if (bag.has("mu") == bag.has("m")) throw InvalidParams("give exactly one of --mu and --m");
      if (!(sigma > 0)) throw InvalidParams("vanishing: requires sigma > 0");
      double mu = bag.has("mu") ? bag.get("mu") : bag.get("m") / sigma;
      return certify_vanishing(f, {bag.get("b"), mu, sigma, direction_of(f)});
    }
    case Family::extremal_decorrelated:
      bag.only({"gamma", "q", "sigma"});
      return certify_extremal({bag.get("gamma"), bag.get("q"), bag.get("sigma")});
    case Family::symmetric:
      bag.only({"gamma", "b", "sigma"});
      return certify_symmetric({bag.get("gamma"), bag.get("b"), bag.get("sigma")});
    case Family::ssvi:
      if (bag.has("theta") || bag.has("phi")) {
        bag.only({"theta", "phi", "rho"});
        return certify_ssvi({bag.get("theta"), bag.get("phi"), bag.get("rho")});
      }
      bag.only({"b", "rho", "sigma"});
      return certify_ssvi(ssvi::SsviParams::from_svi_form(bag.get("b"), bag.get("rho"), bag.get("sigma")));
    case Family::generic:
      bag.only({"a", "b", "rho", "m", "sigma"});
      return certify_svi({bag.get("a"), bag.get("b"), bag.get("rho"), bag.get("m"), bag.get("sigma")});
  }
  throw InvalidParams("unknown family");
}

// Density cross-check attached to a certificate.
inline json oracle_json(const DomainCertificate& c, double density_tol = 1e-8) {
  json o;
  auto rep = durrleman_check(c.raw);
  bool density_ok = rep.min_value >= -density_tol;
  o["durrleman_min"] = num(rep.min_value);
  o["argmin_k"] = num(rep.argmin_k);
  o["density_ok"] = density_ok;
  o["consistent"] = density_ok == c.arbitrage_free();
  if (c.raw.b > 0 && c.raw.sigma > 0) {
    try {
      auto r = sigma_star(c.normalized.shape());
      o["sigma_star"] = num(r.sigma_star);
      o["side"] = to_string(r.side);
    } catch (const ArbitrageViolation&) {
      o["sigma_star"] = nullptr;
    }
  }
  return o;
}

// sigma* for the family coordinates that do not involve sigma.
struct BoundResult {
  double sigma_star;
  SviShape shape;
  json native;
};

inline BoundResult family_bound(Family f, const ParamBag& bag) {
  if (bag.raw) throw InvalidParams("bound takes family coordinates, not --raw");
  switch (f) {
    case Family::vanishing_upward:
    case Family::vanishing_downward: {
      bag.only({"b", "mu"});
      vanishing::VanishingParams v{bag.get("b"), bag.get("mu"), 1.0, direction_of(f)};
      auto c = vanishing::certify(v);
      return {c.sigma_star, c.normalized.shape(), {{"b", num(v.b)}, {"mu", num(v.mu)}}};
    }
    case Family::extremal_decorrelated: {
      bag.only({"gamma", "q"});
      extremal::ExtremalParams e{bag.get("gamma"), bag.get("q"), 1.0};
      e.validate();
      return {extremal::sigma_bound(e.gamma, e.q), {e.gamma, 2.0, 0.0, e.mu()},
              {{"gamma", num(e.gamma)}, {"q", num(e.q)}}};
    }
    case Family::symmetric: {
      bag.only({"gamma", "b"});
      symmetric::SymmetricParams s{bag.get("gamma"), bag.get("b"), 1.0};
      auto c = symmetric::certify(s);
      return {c.sigma_star, c.normalized.shape(), {{"gamma", num(s.gamma)}, {"b", num(s.b)}}};
    }
    case Family::ssvi: {
      bag.only({"b", "rho"});
      double b = bag.get("b");
      double rho = bag.get("rho");
      auto c = ssvi::certify_svi_form(b, rho, 1.0);
      return {c.sigma_star, ssvi::shape(b, rho), {{"b", num(b)}, {"rho", num(rho)}}};
    }
    case Family::generic: {
      bag.only({"gamma", "b", "rho", "mu"});
      SviShape s{bag.get("gamma"), bag.get("b"), bag.get("rho"), bag.get("mu")};
      check_roger_lee(s.b, s.rho);
      auto r = sigma_star(s);
      return {r.sigma_star, s,
              {{"gamma", num(s.gamma)}, {"b", num(s.b)}, {"rho", num(s.rho)}, {"mu", num(s.mu)}}};
    }
  }
  throw InvalidParams("unknown family");
}

}  // namespace smile_domain::cli
