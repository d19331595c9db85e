#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "dispatch.hpp"
#include "sampling.hpp"
#include "tables.hpp"

using namespace smile_domain;
using namespace smile_domain::cli;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(SMILE_DOMAIN_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const Family sampled[] = {Family::vanishing_upward, Family::vanishing_downward, Family::extremal_decorrelated,
                          Family::symmetric, Family::ssvi};

}  // namespace

TEST(Sampling, EverySampleCertifies) {
  for (Family f : sampled) {
    auto samples = draw_samples(f, default_box(f), 100, 7);
    ASSERT_EQ(samples.size(), 100u);
    for (const auto& s : samples) {
      auto c = certify_from_raw(f, s.raw).cert;
      EXPECT_TRUE(c.arbitrage_free()) << to_string(f) << " sigma*=" << s.sigma_star;
      EXPECT_NEAR(c.sigma_star, s.sigma_star, 1e-8 * s.sigma_star) << to_string(f);
    }
  }
}

TEST(Sampling, ZeroExcessStaysInside) {
  for (Family f : sampled) {
    auto box = default_box(f);
    box.ranges["excess"] = {0.0, 0.0};
    for (const auto& s : draw_samples(f, box, 50, 11))
      EXPECT_TRUE(certify_from_raw(f, s.raw).cert.arbitrage_free()) << to_string(f);
  }
}

TEST(Sampling, DeterministicPerSeed) {
  auto a = draw_samples(Family::symmetric, default_box(Family::symmetric), 20, 3);
  auto b = draw_samples(Family::symmetric, default_box(Family::symmetric), 20, 3);
  auto c = draw_samples(Family::symmetric, default_box(Family::symmetric), 20, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].raw.a, b[i].raw.a);
    EXPECT_EQ(a[i].raw.sigma, b[i].raw.sigma);
  }
  EXPECT_NE(a[0].raw.a, c[0].raw.a);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    double u = unit_draw(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Sampling, BoxSpecParsing) {
  auto box = default_box(Family::ssvi);
  apply_box_spec(box, "rho=-0.5:0.25");
  EXPECT_EQ(box.ranges["rho"].lo, -0.5);
  EXPECT_EQ(box.ranges["rho"].hi, 0.25);
  EXPECT_THROW(apply_box_spec(box, "rho"), InvalidParams);
  EXPECT_THROW(apply_box_spec(box, "rho=0.5"), InvalidParams);
  EXPECT_THROW(apply_box_spec(box, "beta=0:1"), InvalidParams);
  EXPECT_THROW(apply_box_spec(box, "rho=a:b"), InvalidParams);
  EXPECT_THROW(apply_box_spec(box, "rho=0.5:0.1"), InvalidParams);
  EXPECT_THROW(apply_box_spec(box, "rho=-1:0.5"), InvalidParams);
  EXPECT_THROW(apply_box_spec(box, "t=0.1:1"), InvalidParams);
  EXPECT_THROW(default_box(Family::generic), InvalidParams);
}

TEST(Tables, HeadersAndShape) {
  const std::map<std::string, std::string> headers{
      {"vanishing-subdomain", "b,subdomain_bound,x_mu_zero,sigma_star_mu_zero,x_mid,sigma_star_mid,sigma_star_x099"},
      {"symmetric-zstar", "gamma,z_star_b0,z_star_gtilde,g_tilde"},
      {"symmetric-zstar-wide", "gamma,z_star_b0,z_star_gtilde,g_tilde"},
      {"gamma-admissibility", "u,gamma_plus,ratio_plus,gamma_minus,ratio_minus"},
      {"symmetric-proof", "gamma,z_i2,J1_prime_b2"},
      {"ssvi-n-curves", "rho,x,n"},
      {"ssvi-gj-vs-b", "rho,b,gj_bound,subdomain_bound,sigma_star"},
      {"ssvi-gj-vs-rho", "b,rho,gj_bound,subdomain_bound,sigma_star"},
  };
  ASSERT_EQ(table_specs().size(), headers.size());
  for (const auto& t : table_specs()) {
    std::ostringstream os;
    t.write(os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, headers.at(t.id));
    std::size_t cols = std::count(line.begin(), line.end(), ',');
    int rows = 0;
    while (std::getline(is, line)) {
      EXPECT_EQ(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')), cols) << t.id;
      ++rows;
    }
    EXPECT_GT(rows, 5) << t.id;
  }
}

TEST(Dispatch, FamilyNamesAndBag) {
  for (const auto& n : family_names()) EXPECT_EQ(to_string(family_from_name(n)), n);
  EXPECT_THROW(family_from_name("heston"), InvalidParams);
  ParamBag bag;
  EXPECT_THROW(bag.get("b"), InvalidParams);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run("certify vanishing-up --b 1 --mu -2 --sigma 1").code, 0);
  EXPECT_EQ(run("certify vanishing-up --b 1 --mu -2 --sigma 0.49").code, 1);
  EXPECT_EQ(run("certify extremal --gamma 1 --q 0 --sigma 1").code, 0);
  EXPECT_EQ(run("certify extremal --gamma 1 --q 0.5 --sigma 1.999").code, 1);
  EXPECT_EQ(run("certify symmetric --gamma -1.5 --b 1 --sigma 9").code, 2);
  EXPECT_EQ(run("certify symmetric --gamma -0.5 --b 1.95 --sigma 1").code, 1);
  EXPECT_EQ(run("certify ssvi --theta 0.1 --phi 1 --rho 0.5").code, 0);
  EXPECT_EQ(run("certify svi --raw 0.04,2.5,0,0,0.1").code, 1);
  EXPECT_EQ(run("certify svi --raw 0.04,0.1,0.2,0,-1").code, 2);
  EXPECT_EQ(run("certify nosuch --b 1").code, 2);
  EXPECT_EQ(run("table nosuch").code, 2);
  EXPECT_EQ(run("table --list").code, 0);
}

TEST(Binary, JsonDocument) {
  auto r = run("certify extremal --gamma 2 --q -0.5 --sigma 1 --oracle");
  ASSERT_EQ(r.code, 0);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["schema"], "smile-domain/1");
  EXPECT_EQ(doc["family"], "extremal");
  EXPECT_TRUE(doc["arbitrage_free"].get<bool>());
  EXPECT_TRUE(doc["diagnostics"]["oracle"]["consistent"].get<bool>());
  EXPECT_TRUE(doc["input"].contains("raw"));

  auto e = json::parse(run("certify symmetric --gamma -1.5 --b 1 --sigma 9").out);
  EXPECT_EQ(e["error"]["kind"], "invalid_params");
}

TEST(Binary, OracleConsistencyAcrossFamilies) {
  for (const char* args : {"certify vanishing-down --b 0.5 --mu 1 --sigma 1", "certify symmetric --gamma 1 --b 1.6 --sigma 0.4",
                           "certify ssvi --b 1 --rho 0.5 --sigma 0.5", "certify svi --raw 0.04,0.4,-0.3,0.1,0.2"}) {
    auto r = run(std::string(args) + " --oracle");
    ASSERT_LE(r.code, 1) << args;
    auto doc = json::parse(r.out);
    EXPECT_TRUE(doc["diagnostics"]["oracle"]["consistent"].get<bool>()) << args;
  }
}

TEST(Binary, BoundAgreesWithOracle) {
  auto r = run("bound ssvi --b 1 --rho 0.5 --oracle --json");
  ASSERT_EQ(r.code, 0);
  auto doc = json::parse(r.out);
  EXPECT_LT(doc["relative_gap"].get<double>(), 1e-8);
}

TEST(Binary, RepeatedRunsAreByteIdentical) {
  for (const char* args : {"sample ssvi --count 5 --seed 9", "table ssvi-gj-vs-b", "scan-uniqueness --rho-steps 40 --x-steps 40"}) {
    auto a = run(args);
    auto b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty());
  }
  auto scan = run("scan-uniqueness --rho-steps 40 --x-steps 40 --threads 3");
  EXPECT_EQ(scan.out, run("scan-uniqueness --rho-steps 40 --x-steps 40").out);
  EXPECT_NE(scan.out.find("There is unicity"), std::string::npos);
}
