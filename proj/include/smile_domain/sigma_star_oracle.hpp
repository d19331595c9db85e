#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "core_svi.hpp"
#include "errors.hpp"
#include "fukasawa.hpp"
#include "numerics.hpp"

namespace smile_domain {

// Zeros of g2 around the origin: g2 > 0 on ]l1, l2[ and g2 < 0 outside.
struct G2Zeros {
  double l1 = -inf;
  double l2 = inf;
  bool has_l1 = false;
  bool has_l2 = false;
};

inline double g2_value(double l, double gamma, double rho) {
  auto n = n_funcs(l, gamma, rho);
  return n.N2 - n.N1 * n.N1 / (2.0 * n.N);
}

inline G2Zeros g2_zeros(double gamma, double rho) {
  if (!(std::abs(rho) <= 1)) throw InvalidParams("g2_zeros: |rho| must be <= 1");
  if (std::abs(rho) == 1 ? !(gamma >= 0) : !(gamma + std::sqrt(1.0 - rho * rho) > 0))
    throw InvalidParams("g2_zeros: total variance must stay positive");
  auto g2 = [&](double l) { return g2_value(l, gamma, rho); };
  if (!(g2(0.0) > 0)) throw DomainError("g2_zeros: g2(0) must be positive");

  auto scan = [&](double dir, double& out) {
    double prev = 0.0;
    for (double t = 0.25; t <= 1e8; t *= 2.0) {
      if (g2(dir * t) < 0) {
        out = bisect(g2, dir * prev, dir * t);
        return true;
      }
      prev = t;
    }
    return false;
  };
  G2Zeros z;
  z.has_l2 = scan(1.0, z.l2);
  z.has_l1 = scan(-1.0, z.l1);
  if (!z.has_l2) z.l2 = inf;
  if (!z.has_l1) z.l1 = -inf;
  return z;
}

enum class Side { left, right };
enum class SupSide { left, right, limit_at_infinity };

inline const char* to_string(SupSide s) {
  switch (s) {
    case SupSide::left: return "left";
    case SupSide::right: return "right";
    case SupSide::limit_at_infinity: return "limit_at_infinity";
  }
  return "?";
}

struct SigmaStarResult {
  double sigma_star = 0.0;
  double argsup_l = 0.0;  // +-inf when the supremum is a wing limit
  SupSide side = SupSide::right;
};

struct OracleOptions {
  int scan_points = 512;
  double reach = 1e8;
  double argsup_rtol = 1e-10;
  bool use_shortcuts = true;
};

struct SideSup {
  double argsup;
  double sup;
  bool at_infinity;
};

// Finite limit of f in the wing, present only on the Roger Lee boundary.
inline bool wing_limit(const SviShape& s, Side side, double& value) {
  if (side == Side::right) {
    if (!near(s.b * (1.0 + s.rho), 2.0)) return false;
    value = 1.0 / (s.gamma / (1.0 + s.rho) - s.mu);
  } else {
    if (!near(s.b * (1.0 - s.rho), 2.0)) return false;
    value = 1.0 / (s.gamma / (1.0 - s.rho) + s.mu);
  }
  return true;
}

// sup of f beyond the g2 zero on one side.
inline SideSup maximize_f_on_interval(const SviShape& s, Side side, const G2Zeros& zeros,
                                      const OracleOptions& opt = {}) {
  double start = side == Side::right ? zeros.l2 : zeros.l1;
  if (!std::isfinite(start)) throw DomainError("maximize_f_on_interval: g2 has no zero on this side");
  double dir = side == Side::right ? 1.0 : -1.0;
  double dmin = 1e-9 * std::max(1.0, std::abs(start));
  auto offs = logspace(dmin, opt.reach, static_cast<std::size_t>(opt.scan_points));
  auto f_at = [&](double logd) { return objective_f(start + dir * std::exp(logd), s); };

  std::vector<double> v(offs.size());
  for (std::size_t i = 0; i < offs.size(); ++i) v[i] = objective_f(start + dir * offs[i], s);

  SideSup best{start, 0.0, false};
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i])) continue;
    bool left_ok = i == 0 || v[i] >= v[i - 1];
    bool right_ok = i + 1 == n || v[i] >= v[i + 1];
    if (!(left_ok && right_ok)) continue;
    double cand_x = offs[i];
    double cand_v = v[i];
    if (i > 0 && i + 1 < n) {
      auto e = golden_max(f_at, std::log(offs[i - 1]), std::log(offs[i + 1]), opt.argsup_rtol);
      if (e.value > cand_v) {
        cand_v = e.value;
        cand_x = std::exp(e.x);
      }
    }
    if (cand_v > best.sup) best = {start + dir * cand_x, cand_v, false};
  }
  double lim;
  if (wing_limit(s, side, lim) && lim >= best.sup) best = {dir * inf, lim, true};
  return best;
}

inline bool is_ssvi_shape(const SviShape& s) {
  if (!(std::abs(s.rho) < 1)) return false;
  double ls = s.l_star();
  return std::abs(s.gamma - std::sqrt(1.0 - s.rho * s.rho)) <= 1e-12 &&
         std::abs(s.mu - ls) <= 1e-12 * std::max(1.0, std::abs(ls));
}

// Smallest sigma for which the smile of this shape is free of butterfly arbitrage.
inline SigmaStarResult sigma_star(const SviShape& s, const OracleOptions& opt = {}) {
  if (!(s.b >= 0) || !(std::abs(s.rho) <= 1) || !std::isfinite(s.gamma) || !std::isfinite(s.mu))
    throw InvalidParams("sigma_star: invalid shape");
  if (s.b == 0) return {0.0, 0.0, SupSide::right};
  if (s.rho <= -1) {
    auto r = sigma_star(invert(s), opt);
    r.argsup_l = -r.argsup_l;
    if (r.side == SupSide::right) r.side = SupSide::left;
    return r;
  }
  if (!fukasawa_holds(s)) throw FukasawaViolation("sigma_star: Fukasawa conditions fail");

  auto zeros = g2_zeros(s.gamma, s.rho);
  bool right = zeros.has_l2;
  bool left = zeros.has_l1;
  if (opt.use_shortcuts) {
    if (s.rho == 0) {
      (s.mu >= 0 ? left : right) = false;
    } else if (is_ssvi_shape(s)) {
      (s.rho >= 0 ? left : right) = false;
    }
  }
  SigmaStarResult res{0.0, 0.0, SupSide::right};
  bool found = false;
  auto take = [&](Side side) {
    auto r = maximize_f_on_interval(s, side, zeros, opt);
    if (!found || r.sup > res.sigma_star) {
      found = true;
      res.sigma_star = r.sup;
      res.argsup_l = r.argsup;
      res.side = r.at_infinity ? SupSide::limit_at_infinity
                               : (side == Side::right ? SupSide::right : SupSide::left);
    }
  };
  if (right) take(Side::right);
  if (left) take(Side::left);
  return res;
}

struct DurrlemanGrid {
  int core_points = 4001;
  double core_half_width = 50.0;
  int tail_points = 200;
  double tail_reach = 1e6;
  bool refine = true;
};

// Default grid; SMILE_DOMAIN_GRID overrides the core point count.
inline DurrlemanGrid default_durrleman_grid() {
  DurrlemanGrid g;
  if (const char* env = std::getenv("SMILE_DOMAIN_GRID")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 3 && n <= 10000000) g.core_points = static_cast<int>(n);
  }
  return g;
}

struct DensityReport {
  double min_value;
  double argmin_l;
  double argmin_k;
};

// Direct grid evaluation of G1 + b g2 / (2 sigma), independent of the sigma* search.
inline DensityReport durrleman_check(const RawSviParams& p,
                                     const DurrlemanGrid& grid = default_durrleman_grid()) {
  p.validate();
  if (!(p.sigma > 0)) throw InvalidParams("durrleman_check requires sigma > 0");
  if (p.b == 0) return {1.0, 0.0, p.m};  // flat total variance: density functional is 1
  auto n = normalize(p);
  bool unit = std::abs(p.rho) == 1;
  if (unit ? p.a < 0 : !(p.min_total_variance() > 0)) {
    double ls = n.l_star();
    return {-inf, ls, p.m + p.sigma * ls};
  }

  std::vector<double> ls = linspace(-grid.core_half_width, grid.core_half_width,
                                    static_cast<std::size_t>(grid.core_points));
  if (grid.tail_points > 0 && grid.tail_reach > grid.core_half_width) {
    auto tail = logspace(grid.core_half_width, grid.tail_reach,
                         static_cast<std::size_t>(grid.tail_points) + 1);
    for (std::size_t i = 1; i < tail.size(); ++i) {
      ls.push_back(tail[i]);
      ls.push_back(-tail[i]);
    }
  }
  std::sort(ls.begin(), ls.end());

  auto J = [&](double l) { return durrleman_functional(l, n); };
  std::vector<double> v(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) v[i] = J(ls[i]);

  DensityReport rep{inf, 0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool local = (i == 0 || v[i] <= v[i - 1]) && (i + 1 == v.size() || v[i] <= v[i + 1]);
    if (!local) continue;
    double x = ls[i];
    double val = v[i];
    if (grid.refine && i > 0 && i + 1 < v.size()) {
      auto e = golden_min(J, ls[i - 1], ls[i + 1], 1e-12 * std::max(1.0, std::abs(x)));
      if (e.value < val) {
        val = e.value;
        x = e.x;
      }
    }
    if (val < rep.min_value) rep = {val, x, 0.0};
  }
  rep.argmin_k = p.m + p.sigma * rep.argmin_l;
  return rep;
}

}  // namespace smile_domain
