#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "smile_domain/vanishing.hpp"

using namespace smile_domain;
using namespace smile_domain::vanishing;

namespace {

bool density_ok(const RawSviParams& p) { return durrleman_check(p).min_value >= -1e-8; }

double interior_x(double b, double t) {
  double xl = x_lower(b);
  return xl + t * (1 - xl);
}

}  // namespace

TEST(VanishingBound, KnownValues) {
  EXPECT_DOUBLE_EQ(fukasawa_bound(1.0), 0.0);
  EXPECT_DOUBLE_EQ(fukasawa_bound(0.0), std::sqrt(3.0));
  EXPECT_NEAR(fukasawa_bound(2.0 / 3.0), 1.0, 1e-15);
  EXPECT_THROW(fukasawa_bound(1.5), InvalidParams);
}

TEST(VanishingMuStar, IsARootOfTheCriticalPointQuadratic) {
  for (double b = 0.1; b < 0.95; b += 0.1) {
    for (double t : {0.05, 0.2, 0.5, 0.8, 0.97}) {
      double x = interior_x(b, t);
      double ms = mu_star(x, b);
      auto [r1, r2] = oracle::vanishing_mu_roots(x, b);
      double d = std::min(std::abs(ms - r1), std::abs(ms - r2));
      EXPECT_LE(d, 1e-9 * std::max(1.0, std::abs(ms))) << "b=" << b << " x=" << x;
    }
  }
  auto [r1, r2] = oracle::vanishing_mu_roots(0.9, 0.5);
  double ms = mu_star(0.9, 0.5);
  EXPECT_TRUE(std::abs(ms - r1) < 1e-10 || std::abs(ms - r2) < 1e-10);
}

TEST(VanishingMuStar, EndpointLimits) {
  for (double b = 0.1; b < 0.95; b += 0.1) {
    EXPECT_NEAR(mu_star(x_lower(b) + 1e-6, b), std::sqrt(3 * (1 - b)), 1e-4) << b;
    EXPECT_LT(mu_star(1 - 1e-12, b), -1e5);
  }
}

TEST(VanishingMuStar, StrictlyDecreasing) {
  for (double b = 0.1; b < 0.95; b += 0.1) {
    double prev = inf;
    for (double t : linspace(1e-3, 1 - 1e-3, 200)) {
      double m = mu_star(interior_x(b, t), b);
      EXPECT_LT(m, prev);
      EXPECT_LT(m, std::sqrt(3 * (1 - b)));
      prev = m;
    }
  }
}

TEST(VanishingMuStar, RejectsPointsOutsideTheInterval) {
  EXPECT_THROW(mu_star(x_lower(0.5), 0.5), DomainError);
  EXPECT_THROW(mu_star(1.0, 0.5), DomainError);
  EXPECT_THROW(sigma_star_closed(0.2, 0.5), DomainError);
  EXPECT_THROW(mu_star(0.9, 1.0), InvalidParams);
}

TEST(VanishingSigmaStarClosed, MatchesOracle) {
  for (double b = 0.1; b < 0.95; b += 0.1) {
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double x = interior_x(b, t);
      double closed = sigma_star_closed(x, b);
      EXPECT_GT(closed, 0);
      double up = sigma_star({0, b, 1, mu_star(x, b)}).sigma_star;
      double down = sigma_star({0, b, -1, -mu_star(x, b)}).sigma_star;
      EXPECT_NEAR(closed, up, 1e-6 * closed) << "b=" << b << " x=" << x;
      EXPECT_NEAR(closed, down, 1e-6 * closed);
      EXPECT_EQ(closed, sigma_star_closed(x, b, Direction::downward));
    }
  }
}

TEST(VanishingXFromMu, RoundTrip) {
  oracle::Gen gen(41);
  for (int i = 0; i < 200; ++i) {
    double b = gen.uniform(0.02, 0.98);
    double mu = gen.uniform(-20, fukasawa_bound(b) - 1e-3);
    auto r = x_from_mu(mu, b);
    EXPECT_FALSE(r.clamped);
    EXPECT_NEAR(detail::mu_star_xu(r.x, r.u, b), mu, 1e-10 * std::max(1.0, std::abs(mu)));
  }
}

TEST(VanishingSubdomain, BoundDominatesAtTheZeroOfMuStar) {
  for (double b = 0.1; b < 0.95; b += 0.1) {
    auto r = x_from_mu(0.0, b);
    EXPECT_LE(sigma_star_closed(r.x, b), subdomain_bound(b)) << b;
    EXPECT_LE(sigma_star_closed(0.99, b), subdomain_bound(b)) << b;
  }
}

TEST(VanishingSubdomain, Examples) {
  double bound = (34 * std::sqrt(2.0) - 5 * std::sqrt(5.0)) / (2 * 54 * 0.75);
  EXPECT_NEAR(subdomain_bound(0.5), bound, 1e-15);
  EXPECT_TRUE(subdomain_check(0.5, 0.0, bound, Direction::upward));
  EXPECT_FALSE(subdomain_check(0.5, 0.1, 10.0, Direction::upward));
  EXPECT_TRUE(subdomain_check(0.5, 0.1, 10.0, Direction::downward));
  EXPECT_GT(subdomain_bound(1 - 1e-9), 1e7);
}

TEST(VanishingSubdomain, ImpliesCertify) {
  oracle::Gen gen(42);
  for (int i = 0; i < 200; ++i) {
    double b = gen.uniform(0.02, 0.98);
    double mu = -gen.uniform(0, 10);
    double sigma = subdomain_bound(b) * gen.uniform(1, 3);
    auto d = gen.integer(0, 1) ? Direction::upward : Direction::downward;
    double m = adjusted_mu(mu, d);
    ASSERT_TRUE(subdomain_check(b, m, sigma, d));
    EXPECT_TRUE(certify({b, m, sigma, d}).arbitrage_free()) << b << " " << mu;
  }
}

TEST(VanishingCertify, UnitSlope) {
  auto c = certify({1.0, -2.0, 1.0, Direction::upward});
  EXPECT_TRUE(c.arbitrage_free());
  EXPECT_DOUBLE_EQ(c.sigma_star, 0.5);
  EXPECT_TRUE(density_ok(c.raw));

  // the boundary sits at -1/mu; both verdicts agree with the density
  auto below = certify({1.0, -2.0, 0.49, Direction::upward});
  EXPECT_FALSE(below.arbitrage_free());
  EXPECT_FALSE(density_ok(below.raw));
  auto mid = certify({1.0, -2.0, 0.999, Direction::upward});
  EXPECT_TRUE(mid.arbitrage_free());
  EXPECT_TRUE(density_ok(mid.raw));

  EXPECT_THROW(certify({1.0, 0.0, 1.0, Direction::upward}), FukasawaViolation);
}

TEST(VanishingCertify, DownwardFigureInstance) {
  VanishingParams p{0.5, 1.0, 1.0, Direction::downward};
  auto c = certify(p);
  EXPECT_EQ(c.family, Family::vanishing_downward);
  EXPECT_EQ(c.arbitrage_free(), density_ok(c.raw));
  EXPECT_NEAR(c.diagnostics.at("mu_star_residual"), 0.0, 1e-10);
}

TEST(VanishingCertify, DownwardDelegatesToUpward) {
  oracle::Gen gen(43);
  for (int i = 0; i < 50; ++i) {
    double b = gen.uniform(0.05, 0.95);
    double mu = gen.uniform(-5, fukasawa_bound(b) - 1e-3);
    double sigma = gen.uniform(0.01, 5);
    auto up = certify({b, mu, sigma, Direction::upward});
    auto down = certify({b, -mu, sigma, Direction::downward});
    EXPECT_EQ(up.arbitrage_free(), down.arbitrage_free());
    EXPECT_EQ(up.sigma_star, down.sigma_star);
  }
}

TEST(VanishingCertify, AgreesWithDensityCheck) {
  oracle::Gen gen(44);
  for (auto d : {Direction::upward, Direction::downward}) {
    int checked = 0;
    while (checked < 50) {
      double b = gen.uniform(0.05, 0.99);
      double mu = gen.uniform(-5, fukasawa_bound(b) - 1e-2);
      double s_star = certify({b, adjusted_mu(mu, d), 1.0, d}).sigma_star;
      double sigma = s_star * std::exp(gen.uniform(-1, 1));
      if (std::abs(sigma / s_star - 1) < 1e-3) continue;
      auto c = certify({b, adjusted_mu(mu, d), sigma, d});
      EXPECT_EQ(c.arbitrage_free(), density_ok(c.raw)) << "b=" << b << " mu=" << mu << " sigma=" << sigma;
      ++checked;
    }
  }
}

TEST(VanishingCertify, RejectsInvalidInput) {
  EXPECT_THROW(certify({0.0, -1.0, 1.0, Direction::upward}), InvalidParams);
  EXPECT_THROW(certify({0.5, -1.0, 0.0, Direction::upward}), InvalidParams);
  EXPECT_THROW(certify({1.2, -1.0, 1.0, Direction::upward}), RogerLeeViolation);
  EXPECT_THROW(certify({0.5, 2.0, 1.0, Direction::upward}), FukasawaViolation);
  EXPECT_THROW(VanishingParams::from_raw({0.1, 0.5, 1, 0, 1}), InvalidParams);
}

TEST(VanishingParams, RawRoundTrip) {
  VanishingParams p{0.4, -1.5, 0.7, Direction::downward};
  auto q = VanishingParams::from_raw(p.to_raw());
  EXPECT_EQ(q.b, p.b);
  EXPECT_NEAR(q.mu, p.mu, 1e-15);
  EXPECT_EQ(q.sigma, p.sigma);
  EXPECT_EQ(q.direction, p.direction);
}
