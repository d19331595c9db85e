#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_json.hpp"
#include "dispatch.hpp"
#include "sampling.hpp"
#include "tables.hpp"

using namespace smile_domain;
using namespace smile_domain::cli;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_arbitrage = 1;
constexpr int exit_invalid = 2;

const char* const numeric_flags[] = {"a", "b", "rho", "m", "sigma", "mu", "gamma", "q", "theta", "phi"};

struct ParamFlags {
  std::map<std::string, double> storage;
  std::map<std::string, CLI::Option*> opts;
  std::vector<double> raw;
  CLI::Option* raw_opt = nullptr;

  void attach(CLI::App* app, bool with_raw) {
    for (const char* name : numeric_flags) {
      storage[name] = 0.0;
      opts[name] = app->add_option(std::string("--") + name, storage[name]);
    }
    if (with_raw)
      raw_opt = app->add_option("--raw", raw, "a,b,rho,m,sigma")->delimiter(',')->expected(5);
  }

  ParamBag bag() const {
    ParamBag b;
    for (const auto& [name, opt] : opts)
      if (opt->count() > 0) b.values[name] = storage.at(name);
    if (raw_opt && raw_opt->count() > 0) {
      if (raw.size() != 5) throw InvalidParams("--raw takes five values a,b,rho,m,sigma");
      b.raw = RawSviParams{raw[0], raw[1], raw[2], raw[3], raw[4]};
    }
    return b;
  }
};

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

// Shared error mapping: invalid input is 2, a violated necessary condition is 1.
template <class F>
int guarded_command(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const ArbitrageViolation& e) {
    emit(error_json(command, "arbitrage", e.what()));
    return exit_arbitrage;
  } catch (const InvalidParams& e) {
    emit(error_json(command, "invalid_params", e.what()));
  } catch (const DomainError& e) {
    emit(error_json(command, "domain", e.what()));
  } catch (const SmileDomainError& e) {
    emit(error_json(command, "numerical", e.what()));
  } catch (const std::exception& e) {
    emit(error_json(command, "internal", e.what()));
  }
  return exit_invalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify and construct butterfly-arbitrage-free SVI smiles"};
  app.require_subcommand(1);

  std::string family;
  auto family_check = CLI::IsMember(family_names());

  auto* certify = app.add_subcommand("certify", "certify a parameter set (exit 0 pass, 1 arbitrage, 2 invalid)");
  ParamFlags certify_flags;
  bool with_oracle = false;
  certify->add_option("family", family, "family name")->required()->check(family_check);
  certify_flags.attach(certify, true);
  certify->add_flag("--oracle", with_oracle, "add a Durrleman density cross-check");

  auto* bound = app.add_subcommand("bound", "closed-form sigma* for family coordinates");
  ParamFlags bound_flags;
  bool bound_oracle = false;
  bool bound_json = false;
  bound->add_option("family", family, "family name")->required()->check(family_check);
  bound_flags.attach(bound, false);
  bound->add_flag("--oracle", bound_oracle, "compare with the numerical sigma*");
  bound->add_flag("--json", bound_json, "emit JSON instead of text");

  auto* sample = app.add_subcommand("sample", "draw arbitrage-free smiles from the explicit parametrizations");
  int count = 10;
  std::uint64_t seed = 1;
  std::vector<std::string> boxes;
  sample->add_option("family", family, "family name")
      ->required()
      ->check(CLI::IsMember({"vanishing-up", "vanishing-down", "extremal", "symmetric", "ssvi"}));
  sample->add_option("--count", count, "number of samples");
  sample->add_option("--seed", seed, "random seed");
  sample->add_option("--box", boxes, "coordinate range NAME=LO:HI (repeatable)");

  auto* table = app.add_subcommand("table", "CSV data behind a figure");
  std::string figure;
  bool list_tables = false;
  table->add_option("figure", figure, "figure id");
  table->add_flag("--list", list_tables, "list figure ids");

  auto* scan = app.add_subcommand("scan-uniqueness", "grid check that n > 0 at b = 2/(1+rho)");
  int rho_steps = 1000;
  int x_steps = 1000;
  int threads = 1;
  scan->add_option("--rho-steps", rho_steps, "rho grid size");
  scan->add_option("--x-steps", x_steps, "x grid size");
  scan->add_option("--threads", threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_json("parse", "invalid_params", e.what()));
    return exit_invalid;
  }

  if (certify->parsed()) {
    return guarded_command("certify", [&] {
      auto r = certify_from_bag(family_from_name(family), certify_flags.bag());
      auto doc = certificate_json(r.cert, r.native);
      if (with_oracle) doc["diagnostics"]["oracle"] = oracle_json(r.cert);
      emit(doc);
      return r.cert.arbitrage_free() ? exit_pass : exit_arbitrage;
    });
  }

  if (bound->parsed()) {
    return guarded_command("bound", [&] {
      auto f = family_from_name(family);
      auto r = family_bound(f, bound_flags.bag());
      json doc = {{"schema", schema_tag}, {"command", "bound"}, {"family", to_string(f)},
                  {"input", r.native},    {"sigma_star", num(r.sigma_star)}};
      if (bound_oracle) {
        auto o = sigma_star(r.shape);
        double gap = std::abs(o.sigma_star - r.sigma_star) / std::max(std::abs(r.sigma_star), 1e-300);
        doc["sigma_star_oracle"] = num(o.sigma_star);
        doc["relative_gap"] = num(gap);
        doc["side"] = to_string(o.side);
        doc["argsup_l"] = num(o.argsup_l);
      }
      if (bound_json) {
        emit(doc);
      } else {
        std::cout << "family " << to_string(f) << '\n' << "sigma_star " << csv(r.sigma_star) << '\n';
        if (bound_oracle) {
          std::cout << "sigma_star_oracle " << doc["sigma_star_oracle"].dump() << '\n'
                    << "relative_gap " << doc["relative_gap"].dump() << '\n'
                    << "side " << doc["side"].get<std::string>() << '\n';
        }
      }
      return exit_pass;
    });
  }

  if (sample->parsed()) {
    return guarded_command("sample", [&] {
      auto f = family_from_name(family);
      auto box = default_box(f);
      for (const auto& spec : boxes) apply_box_spec(box, spec);
      json list = json::array();
      for (const auto& s : draw_samples(f, box, count, seed)) {
        json coords = json::object();
        for (const auto& [k, v] : s.coords) coords[k] = num(v);
        list.push_back({{"coords", coords}, {"native", s.native}, {"raw", raw_json(s.raw)},
                        {"sigma_star", num(s.sigma_star)}});
      }
      json box_doc = json::object();
      for (const auto& [k, r] : box.ranges) box_doc[k] = {num(r.lo), num(r.hi)};
      emit({{"schema", schema_tag}, {"command", "sample"}, {"family", to_string(f)}, {"seed", seed},
            {"count", count}, {"box", box_doc}, {"samples", list}});
      return exit_pass;
    });
  }

  if (table->parsed()) {
    if (list_tables || figure.empty()) {
      for (const auto& t : table_specs()) std::cout << t.id << '\t' << t.description << '\n';
      return figure.empty() && !list_tables ? exit_invalid : exit_pass;
    }
    for (const auto& t : table_specs()) {
      if (t.id == figure) {
        t.write(std::cout);
        return exit_pass;
      }
    }
    std::cerr << "unknown figure id '" << figure << "'; see `table --list`\n";
    return exit_invalid;
  }

  if (scan->parsed()) {
    return guarded_command("scan-uniqueness", [&] {
      if (threads < 1) throw InvalidParams("--threads must be at least 1");
      auto r = ssvi::scan_uniqueness(rho_steps, x_steps, threads);
      std::cout << "grid " << rho_steps << 'x' << x_steps << '\n'
                << "min_n " << csv(r.min_n) << '\n'
                << "argmin_rho " << csv(r.argmin_rho) << '\n'
                << "argmin_x " << csv(r.argmin_x) << '\n'
                << "non_positive " << r.non_positive << '\n'
                << r.verdict() << '\n';
      return r.pass() ? exit_pass : exit_arbitrage;
    });
  }
  return exit_invalid;
}
