#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <string>

#include "skewlab/report.hpp"
#include "skewlab/suite.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 a check failed or the run errored, 2 bad input or output.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void configureLogging() {
  auto logger = spdlog::stderr_color_mt("skewlab");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("SKEWLAB_LOG")) {
    const auto parsed = spdlog::level::from_str(lvl);
    // from_str maps unknown names to off; keep the default in that case.
    if (parsed != spdlog::level::off || std::string(lvl) == "off") spdlog::set_level(parsed);
  }
}

void listChecks() {
  for (const auto& c : skewlab::checkCatalogue()) std::cout << c.id << "  " << c.name << "\n";
}

struct Options {
  skewlab::SuiteConfig cfg;
  std::string configPath;
  std::string out = "-";
  std::string checks;
  bool listOnly = false;
};

void addCommonOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.configPath, "key=value file applied before the command-line flags");
  cmd->add_option("--base", o.cfg.base, "base space: s4, hpn, cp2");
  cmd->add_option("--n", o.cfg.n, "quaternionic dimension of the base");
  cmd->add_option("--t", o.cfg.t, "fibre parameter: number, t0, t1 or a multiple like 1.7*t1");
  cmd->add_option("--structure", o.cfg.structure, "almost complex structure: J1 or J2");
  cmd->add_option("--scale", o.cfg.scale, "base metric scale");
  cmd->add_option("--tol", o.cfg.tol, "tolerance for algebraic identities");
  cmd->add_option("--tol-cmp", o.cfg.tolCmp, "tolerance for finite-difference comparisons");
  cmd->add_option("--seed", o.cfg.seed, "seed for random sampling");
  cmd->add_option("--checks", o.checks, "comma-separated id prefixes; a leading '-' excludes");
  cmd->add_option("--out", o.out, "report path, '-' for stdout");
  cmd->add_flag("--list-checks", o.listOnly, "print the check catalogue and exit");
}

}  // namespace

int main(int argc, char** argv) {
  configureLogging();
  CLI::App app{"Verification suite for canonical Hermitian connections on twistor spaces"};
  app.require_subcommand(1);
  Options opt;
  struct Sub {
    const char* name;
    const char* help;
    skewlab::SuiteMode mode;
  };
  const Sub subs[] = {
      {"verify", "run the full check suite", skewlab::SuiteMode::Full},
      {"rep", "representation-theoretic checks only", skewlab::SuiteMode::Representation},
      {"holonomy", "holonomy algebra checks only", skewlab::SuiteMode::Holonomy},
      {"oracle", "finite-difference chart oracle", skewlab::SuiteMode::Oracle},
  };
  skewlab::SuiteMode mode = skewlab::SuiteMode::Full;
  bool listCmd = false;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    addCommonOptions(cmd, opt);
    cmd->callback([&mode, m = s.mode] { mode = m; });
  }
  app.add_subcommand("list-checks", "print the check catalogue")->callback([&] { listCmd = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }
  if (listCmd || opt.listOnly) {
    listChecks();
    return kExitPass;
  }

  try {
    skewlab::SuiteConfig cfg;
    if (!opt.configPath.empty()) skewlab::applyConfigFile(opt.configPath, cfg);
    // Flags given explicitly override the file.
    for (const CLI::App* cmd : app.get_subcommands()) {
      auto given = [&](const char* flag) { return cmd->get_option(flag)->count() > 0; };
      if (given("--base")) cfg.base = opt.cfg.base;
      if (given("--n")) cfg.n = opt.cfg.n;
      if (given("--t")) cfg.t = opt.cfg.t;
      if (given("--structure")) cfg.structure = opt.cfg.structure;
      if (given("--scale")) cfg.scale = opt.cfg.scale;
      if (given("--tol")) cfg.tol = opt.cfg.tol;
      if (given("--tol-cmp")) cfg.tolCmp = opt.cfg.tolCmp;
      if (given("--seed")) cfg.seed = opt.cfg.seed;
      if (given("--checks")) skewlab::applyConfigEntry("checks", opt.checks, cfg);
    }
    const skewlab::VerificationReport report = skewlab::runSuite(cfg, mode);
    skewlab::emitReport(report, opt.out);
    spdlog::info("{} passed, {} failed, {} skipped", report.summary.passed, report.summary.failed,
                 report.summary.skipped);
    return report.allPassed() ? kExitPass : kExitFail;
  } catch (const skewlab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const skewlab::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
