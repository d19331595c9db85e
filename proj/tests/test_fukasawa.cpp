#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "smile_domain/fukasawa.hpp"
#include "smile_domain/symmetric.hpp"

using namespace smile_domain;

namespace {

double direct_l_minus_curve(double l_, double b_, double rho_) {
  oracle::hp l = l_, b = b_, rho = rho_;
  oracle::hp s = sqrt(l * l + 1);
  oracle::hp t = rho * s + l;
  return static_cast<double>(t * t * (s * (oracle::hp(0.5) + b * rho / 4) + b * l / 4) - (rho * l + s));
}

// Smallest of G1+ and G1- over a dense asinh grid, evaluated in 50 digits.
double min_g1_factor(const SviShape& s) {
  double t = std::asinh(1e6);
  double worst = std::numeric_limits<double>::infinity();
  for (double u : linspace(-t, t, 12001)) {
    auto v = oracle::hgg2(std::sinh(u), s);
    oracle::hp bg = oracle::hp(s.b) * v.g;
    worst = std::min(worst, static_cast<double>(std::min(v.h - bg, v.h + bg)));
  }
  return worst;
}

}  // namespace

TEST(LMinusCurve, KnownValuesAndHighPrecision) {
  EXPECT_NEAR(l_minus_curve(-1, 0, 0), -std::sqrt(2.0) / 2, 1e-15);
  oracle::Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    double rho = gen.uniform(-0.95, 0.95);
    double b = gen.uniform(0, 2 / (1 + std::abs(rho)));
    double ls = -rho / std::sqrt(1 - rho * rho);
    double l = ls - std::pow(10.0, gen.uniform(-3, 3));
    double ref = direct_l_minus_curve(l, b, rho);
    EXPECT_NEAR(l_minus_curve(l, b, rho), ref, 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST(LMinusCurve, SymmetricEvaluationPointGivesThreshold) {
  for (double b : {0.1, 0.5, 1.0, 1.5, 1.9}) {
    double l = -6 * b / std::sqrt(b * b * b * b - 20 * b * b + 64);
    EXPECT_NEAR(l_minus_curve(l, b, 0), symmetric::fukasawa_threshold_closed(b), 1e-13);
  }
}

TEST(SolveLMinus, ResidualAndOrdering) {
  oracle::Gen gen(22);
  for (int i = 0; i < 200; ++i) {
    double rho = gen.uniform(-0.95, 0.95);
    double b = gen.uniform(0.01, 0.99) * 2 / (1 + std::abs(rho));
    double gamma = gen.uniform(-std::sqrt(1 - rho * rho) + 0.02, 3);
    double ls = -rho / std::sqrt(1 - rho * rho);
    double lm;
    try {
      lm = solve_l_minus(gamma, b, rho);
    } catch (const NoRoot&) {
      continue;  // gamma below the curve's infimum: no root, interval empty on this side
    }
    EXPECT_LT(lm, ls);
    EXPECT_LE(std::abs(l_minus_curve(lm, b, rho) - gamma), 1e-12 * std::max(1.0, std::abs(gamma)));
  }
}

TEST(SolveLMinus, SymmetricClosedFormAtThreshold) {
  for (double b : {0.3, 1.0, 1.7}) {
    double gamma = symmetric::fukasawa_threshold_closed(b);
    double expected = -6 * b / std::sqrt(b * b * b * b - 20 * b * b + 64);
    // gamma = F~ is the curve minimum: the root is a double root, accurate to sqrt(eps)
    double lm = solve_l_minus(gamma + 1e-12, b, 0);
    EXPECT_NEAR(lm, expected, 1e-5);
  }
}

TEST(SolveLMinus, MatchesDenseScan) {
  double b = 1e-3, rho = 0, gamma = 0;
  double lm = solve_l_minus(gamma, b, rho);
  double prev = l_minus_curve(-1e4, b, rho) - gamma;
  double found = NAN;
  for (double l = -1e4; l < 0; l += 1e-3) {
    double cur = l_minus_curve(l, b, rho) - gamma;
    if ((prev > 0) != (cur > 0)) {
      found = l;
      break;
    }
    prev = cur;
  }
  EXPECT_NEAR(lm, found, 2e-3);
}

TEST(SolveLMinus, DegenerateWingHasNoRoot) {
  EXPECT_THROW(solve_l_minus(1.0, 2.0, 0.0), NoRoot);
  EXPECT_EQ(classify_wings(2.0, 0.0), DegenerateCase::b2_rho0);
  EXPECT_THROW(solve_l_minus(0.5, 1.25, -0.6), NoRoot);
}

TEST(LMinus, KnownValues) {
  EXPECT_NEAR(L_minus(-1, 0, 0, 0), -3.0, 1e-14);
  EXPECT_THROW(L_minus(0.0, 1.0, 1.0, 0.0), DomainError);
  for (double b : {0.1, 0.4, 0.75, 0.95}) {
    double lm = solve_l_minus(0.0, b, -1.0);
    EXPECT_NEAR(-L_minus(lm, 0.0, b, -1.0), std::sqrt(3 * (1 - b)), 1e-9) << b;
  }
}

TEST(LMinus, NonPositiveAtRootForNonNegativeGamma) {
  oracle::Gen gen(23);
  for (int i = 0; i < 100; ++i) {
    double rho = gen.uniform(-0.9, 0.9);
    double b = gen.uniform(0.05, 0.95) * 2 / (1 + std::abs(rho));
    double gamma = gen.uniform(0, 3);
    double lm = solve_l_minus(gamma, b, rho);
    EXPECT_LE(L_minus(lm, gamma, b, rho), 1e-12);
  }
}

TEST(MuInterval, ExtremalCase) {
  auto I = mu_interval(1.0, 2.0, 0.0);
  EXPECT_DOUBLE_EQ(I.lower, -1.0);
  EXPECT_DOUBLE_EQ(I.upper, 1.0);
  EXPECT_EQ(I.degenerate_case, DegenerateCase::b2_rho0);
}

TEST(MuInterval, SsviCriticalPointAlwaysInside) {
  oracle::Gen gen(24);
  for (int i = 0; i < 100; ++i) {
    double rho = gen.uniform(-0.95, 0.95);
    double b = gen.uniform(0.01, 1.0) * 2 / (1 + std::abs(rho));
    double gamma = std::sqrt(1 - rho * rho);
    double ls = -rho / gamma;
    EXPECT_TRUE(mu_interval(gamma, b, rho).contains(ls)) << rho << " " << b;
  }
}

TEST(MuInterval, EmptyBelowThreshold) {
  for (double b : {0.5, 1.0, 1.8}) {
    double ft = symmetric::fukasawa_threshold_closed(b);
    bool empty = true;
    try {
      empty = mu_interval(ft - 1e-3, b, 0.0).empty();
    } catch (const NoRoot&) {
    } catch (const InvalidParams&) {
      // below -sqrt(1-rho^2) the total variance itself turns negative
    }
    EXPECT_TRUE(empty);
    EXPECT_FALSE(mu_interval(ft + 1e-3, b, 0.0).empty());
  }
}

TEST(MuInterval, AntisymmetricUnderInversion) {
  oracle::Gen gen(25);
  for (int i = 0; i < 100; ++i) {
    double rho = gen.uniform(-0.95, 0.95);
    double b = gen.uniform(0.01, 1.0) * 2 / (1 + std::abs(rho));
    double gamma = gen.uniform(0.0, 3.0);
    auto I = mu_interval(gamma, b, rho);
    auto J = mu_interval(gamma, b, -rho);
    EXPECT_NEAR(I.lower, -J.upper, 1e-10);
    EXPECT_NEAR(I.upper, -J.lower, 1e-10);
  }
}

TEST(MuInterval, NonEmptyForPositiveGamma) {
  oracle::Gen gen(26);
  for (int i = 0; i < 100; ++i) {
    double rho = gen.uniform(-0.99, 0.99);
    double b = gen.uniform(0.0, 1.0) * 2 / (1 + std::abs(rho));
    EXPECT_FALSE(mu_interval(gen.uniform(1e-3, 5), b, rho).empty());
  }
}

TEST(MuInterval, RejectsRogerLeeViolation) {
  EXPECT_THROW(mu_interval(1.0, 1.5, 0.5), RogerLeeViolation);
}

// The interval is exactly where G1+ and G1- stay positive on the whole line.
TEST(MuInterval, CharacterizesPositivityOfG1Factors) {
  oracle::Gen gen(27);
  for (int i = 0; i < 12; ++i) {
    double rho = gen.uniform(-0.8, 0.8);
    double b = gen.uniform(0.2, 0.95) * 2 / (1 + std::abs(rho));
    double gamma = gen.uniform(0.0, 1.5);
    auto I = mu_interval(gamma, b, rho);
    double w = I.upper - I.lower;
    EXPECT_GT(min_g1_factor({gamma, b, rho, I.lower + 0.05 * w}), 0.0);
    EXPECT_GT(min_g1_factor({gamma, b, rho, I.upper - 0.05 * w}), 0.0);
    EXPECT_LT(min_g1_factor({gamma, b, rho, I.lower - 0.05 * w}), 0.0);
    EXPECT_LT(min_g1_factor({gamma, b, rho, I.upper + 0.05 * w}), 0.0);
  }
}

TEST(UnitCorrelation, VanishingBound) {
  for (double b : {0.0001, 0.3, 2.0 / 3.0, 0.9}) {
    auto I = unit_correlation_interval(0.0, b, 1.0);
    EXPECT_NEAR(I.upper, std::sqrt(3 * (1 - b)), 1e-9);
    EXPECT_EQ(I.lower, -inf);
    auto J = unit_correlation_interval(0.0, b, -1.0);
    EXPECT_NEAR(J.lower, -std::sqrt(3 * (1 - b)), 1e-9);
  }
  EXPECT_EQ(unit_correlation_interval(0.0, 1.0, 1.0).upper, 0.0);
  EXPECT_THROW(unit_correlation_interval(-0.1, 0.5, 1.0), InvalidParams);
  EXPECT_THROW(unit_correlation_interval(0.0, 1.2, 1.0), RogerLeeViolation);
}

TEST(FukasawaThreshold, MatchesSymmetricClosedForm) {
  for (double b : {0.1, 0.5, 1.0, 1.5, 1.9})
    EXPECT_NEAR(fukasawa_threshold(b, 0.0), symmetric::fukasawa_threshold_closed(b), 1e-8) << b;
}

TEST(FukasawaThreshold, Endpoints) {
  EXPECT_DOUBLE_EQ(fukasawa_threshold(2.0, 0.0), 0.0);
  EXPECT_NEAR(fukasawa_threshold(0.0, 0.0), -1.0, 1e-10);
  EXPECT_NEAR(fukasawa_threshold(1.0, 0.0), -33 * std::sqrt(3.0) / std::pow(15.0, 1.5), 1e-8);
}

TEST(FukasawaThreshold, NondecreasingInB) {
  double prev = -1.0 - 1e-12;
  for (double b : linspace(0.0, 2.0, 50)) {
    double ft = fukasawa_threshold(b, 0.0);
    EXPECT_GE(ft, prev - 1e-10);
    EXPECT_GE(ft, -1.0);
    EXPECT_LE(ft, 0.0);
    prev = ft;
  }
}
