#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dispatch.hpp"

namespace smile_domain::cli {

struct Range {
  double lo;
  double hi;
};

// Coordinates of the constructive parametrizations. `excess` scales sigma
// above sigma*: sigma = sigma* (1 + excess).
struct SampleBox {
  std::map<std::string, Range> ranges;
  std::map<std::string, Range> limits;  // open bounds each coordinate must respect
};

inline SampleBox default_box(Family f) {
  SampleBox box;
  const double tiny = 1e-12;
  switch (f) {
    case Family::vanishing_upward:
    case Family::vanishing_downward:
      box.ranges = {{"b", {0.05, 0.95}}, {"t", {0.02, 0.98}}, {"excess", {0.0, 1.0}}};
      box.limits = {{"b", {0.0, 1.0}}, {"t", {0.0, 1.0}}, {"excess", {-tiny, inf}}};
      break;
    case Family::extremal_decorrelated:
      box.ranges = {{"gamma", {0.1, 4.0}}, {"q", {-0.95, 0.95}}, {"excess", {0.0, 1.0}}};
      box.limits = {{"gamma", {0.0, inf}}, {"q", {-1.0, 1.0}}, {"excess", {-tiny, inf}}};
      break;
    case Family::symmetric:
      box.ranges = {{"u", {-0.9, 3.0}}, {"t", {0.02, 0.98}}, {"excess", {0.0, 1.0}}};
      box.limits = {{"u", {-1.0, inf}}, {"t", {0.0, 1.0}}, {"excess", {-tiny, inf}}};
      break;
    case Family::ssvi:
      box.ranges = {{"rho", {-0.9, 0.9}}, {"t", {0.02, 0.98}}, {"excess", {0.0, 1.0}}};
      box.limits = {{"rho", {-1.0, 1.0}}, {"t", {0.0, 1.0}}, {"excess", {-tiny, inf}}};
      break;
    case Family::generic: throw InvalidParams("sample: the generic svi family has no parametrization");
  }
  return box;
}

// Parses NAME=LO:HI into the box, rejecting ranges outside the open limits.
inline void apply_box_spec(SampleBox& box, const std::string& spec) {
  auto eq = spec.find('=');
  auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
  if (eq == std::string::npos || colon == std::string::npos) throw InvalidParams("box spec must be NAME=LO:HI");
  std::string name = spec.substr(0, eq);
  auto it = box.limits.find(name);
  if (it == box.limits.end()) throw InvalidParams("unknown box coordinate '" + name + "'");
  double lo, hi;
  try {
    std::size_t p1, p2;
    std::string slo = spec.substr(eq + 1, colon - eq - 1);
    std::string shi = spec.substr(colon + 1);
    lo = std::stod(slo, &p1);
    hi = std::stod(shi, &p2);
    if (p1 != slo.size() || p2 != shi.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw InvalidParams("box bounds for '" + name + "' are not numbers");
  }
  if (!(lo <= hi)) throw InvalidParams("box for '" + name + "' needs LO <= HI");
  if (!(lo > it->second.lo && hi < it->second.hi))
    throw InvalidParams("box for '" + name + "' leaves the admissible range");
  box.ranges[name] = {lo, hi};
}

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Sample {
  std::map<std::string, double> coords;
  RawSviParams raw;
  json native;
  double sigma_star;
};

// Keeps constructed points strictly inside the domain despite last-bit differences
// between the forward construction and the certifying inversion.
inline constexpr double inward_margin = 1e-9;

inline Sample build_sample(Family f, const std::map<std::string, double>& c) {
  double grow = (1 + c.at("excess")) * (1 + inward_margin);
  switch (f) {
    case Family::vanishing_upward:
    case Family::vanishing_downward: {
      double b = c.at("b");
      double xl = vanishing::x_lower(b);
      double x = xl + c.at("t") * (1 - xl);
      auto d = direction_of(f);
      double mu = vanishing::signed_mu_star(x, b, d);
      double s_star = vanishing::sigma_star_closed(x, b, d);
      vanishing::VanishingParams v{b, mu, s_star * grow, d};
      return {c, v.to_raw(), native_json(v), s_star};
    }
    case Family::extremal_decorrelated: {
      double g = c.at("gamma");
      double q = c.at("q");
      double s_star = extremal::sigma_bound(g, q);
      extremal::ExtremalParams e{g, q, s_star * grow};
      return {c, e.to_raw(), native_json(e), s_star};
    }
    case Family::symmetric: {
      double gamma = symmetric::gamma_star(c.at("u"));
      auto I = symmetric::z_interval(gamma);
      double z = I.b0_end + c.at("t") * (I.gtilde_end - I.b0_end);
      double b = symmetric::b_star(z, gamma);
      double s_star = symmetric::sigma_star_at(z, gamma, b);
      symmetric::SymmetricParams s{gamma, b, s_star * grow};
      return {c, s.to_raw(), native_json(s), s_star};
    }
    case Family::ssvi: {
      double rho = c.at("rho");
      double r = std::abs(rho);
      double l = ssvi::l_bar_zero(r) / (1 - c.at("t"));
      double b = ssvi::b_star(l, r);
      double s_star = ssvi::sigma_star_at(l, r, b);
      auto p = ssvi::SsviParams::from_svi_form(b, rho, s_star * grow);
      return {c, p.to_raw(), native_json(p), s_star};
    }
    case Family::generic: break;
  }
  throw InvalidParams("sample: the generic svi family has no parametrization");
}

inline std::vector<Sample> draw_samples(Family f, const SampleBox& box, int count, std::uint64_t seed) {
  if (count < 0) throw InvalidParams("sample: count must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::map<std::string, double> c;
    for (const auto& [name, r] : box.ranges) c[name] = r.lo + (r.hi - r.lo) * unit_draw(rng);
    out.push_back(build_sample(f, c));
  }
  return out;
}

}  // namespace smile_domain::cli
