#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "smile_domain/smile_domain.hpp"

namespace smile_domain::cli {

using nlohmann::json;

inline constexpr const char* schema_tag = "smile-domain/1";

// JSON has no infinities; they travel as strings.
inline json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

// Locale-free CSV field.
inline std::string csv(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline json raw_json(const RawSviParams& p) {
  return {{"a", num(p.a)}, {"b", num(p.b)}, {"rho", num(p.rho)}, {"m", num(p.m)}, {"sigma", num(p.sigma)}};
}

inline json normalized_json(const NormalizedSvi& n) {
  return {{"gamma", num(n.gamma)}, {"b", num(n.b)}, {"rho", num(n.rho)}, {"mu", num(n.mu)},
          {"sigma", num(n.sigma)}};
}

inline json certificate_json(const DomainCertificate& c, const json& native) {
  json diag = json::object();
  for (const auto& [k, v] : c.diagnostics) diag[k] = num(v);
  json doc = {
      {"schema", schema_tag},
      {"command", "certify"},
      {"family", to_string(c.family)},
      {"input", {{"native", native}, {"raw", raw_json(c.raw)}, {"normalized", normalized_json(c.normalized)}}},
      {"conditions", {{"roger_lee", c.roger_lee}, {"fukasawa", c.fukasawa}, {"sigma_bound", c.sigma_bound}}},
      {"bounds", {{"sigma_star", num(c.sigma_star)}, {"mu_lower", num(c.mu_lower)}, {"mu_upper", num(c.mu_upper)}}},
      {"on_boundary", c.on_boundary},
      {"arbitrage_free", c.arbitrage_free()},
      {"diagnostics", diag},
  };
  if (!c.uniqueness.empty()) doc["uniqueness"] = c.uniqueness;
  if (!c.note.empty()) doc["note"] = c.note;
  return doc;
}

inline json error_json(const std::string& command, const std::string& kind, const std::string& message) {
  return {{"schema", schema_tag}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace smile_domain::cli
