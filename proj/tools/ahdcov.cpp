// ahdcov: coverage, throughput and critical density of downlink networks
// with multi-slope pathloss and antenna height difference.
//
//   ahdcov eval     --alphas 1.5,4 --breakpoints 10 --delta-h 8.5 --lambda 1000
//   ahdcov sweep    --config fig3.cfg --set sweep.outputs=analytic,mc
//   ahdcov critical --alphas 5 --set sweep.variable=ahd --set sweep.grid=1,2,4 --epsilon 0.5
//   ahdcov validate --trials 100000 --seed 7 --output report.json
//
// Exit status: 0 on success, 1 when a computation failed (or validation did
// not pass), 2 on usage or configuration errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ahdcov/config.hpp"
#include "ahdcov/sweep.hpp"
#include "ahdcov/validate.hpp"

namespace {

enum Exit { kOk = 0, kComputeFailure = 1, kUsage = 2 };

struct Common {
  std::string config_file;
  std::vector<std::string> sets;
  std::string output;
  std::string format = "csv";
  // Convenience flags, forwarded as config keys.
  std::string alphas, breakpoints, lambda, delta_h, tau_db, p_dbm, fading, trials, seed, epsilon;
};

void add_common(CLI::App* cmd, Common& c, bool with_network = true) {
  cmd->add_option("-o,--output", c.output, "Output file (default stdout)");
  cmd->add_option("-f,--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  if (!with_network) return;
  cmd->add_option("-c,--config", c.config_file, "Config file (key = value lines or JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--set", c.sets, "Override a config key: key=value (repeatable)");
  cmd->add_option("--alphas", c.alphas, "Pathloss exponents, comma separated");
  cmd->add_option("--breakpoints", c.breakpoints, "Breakpoint distances in m, comma separated");
  cmd->add_option("--lambda", c.lambda, "BS density in BS/km^2");
  cmd->add_option("--delta-h", c.delta_h, "Antenna height difference in m");
  cmd->add_option("--tau-db", c.tau_db, "SIR threshold in dB");
  cmd->add_option("--p-dbm", c.p_dbm, "Transmit power in dBm (does not affect SIR)");
  cmd->add_option("--fading", c.fading, "rayleigh or rice");
  cmd->add_option("--trials", c.trials, "Monte Carlo trials per point");
  cmd->add_option("--seed", c.seed, "Monte Carlo seed");
  cmd->add_option("--epsilon", c.epsilon, "Coverage requirement in (0, 1)");
}

ahdcov::RunConfig load(const Common& c) {
  ahdcov::KeyValues base;
  if (!c.config_file.empty()) base = ahdcov::load_config_file(c.config_file);
  ahdcov::KeyValues overrides;
  const std::pair<const char*, const std::string*> flags[] = {
      {"model.alphas", &c.alphas},   {"model.breakpoints_m", &c.breakpoints}, {"net.lambda_per_km2", &c.lambda},
      {"net.delta_h_m", &c.delta_h}, {"net.tau_db", &c.tau_db},              {"net.p_dbm", &c.p_dbm},
      {"net.fading", &c.fading},
      {"mc.trials", &c.trials},      {"mc.seed", &c.seed},                    {"qos.epsilon", &c.epsilon},
  };
  for (const auto& [key, value] : flags) {
    if (!value->empty()) overrides[key] = *value;
  }
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ahdcov::ConfigError(s, "--set expects key=value");
    overrides[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return ahdcov::parse_config(base, overrides);
}

int emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return std::cout ? kOk : kComputeFailure;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << c.output << "\n";
    return kUsage;
  }
  out << text;
  return out ? kOk : kComputeFailure;
}

void print_notes(const ahdcov::RunConfig& rc) {
  for (const auto& n : rc.notes) std::cerr << "note: " << n << "\n";
}

int sweep_like(const Common& c, ahdcov::RunConfig rc) {
  print_notes(rc);
  const auto records = ahdcov::run_sweep(rc);
  std::ostringstream text;
  if (c.format == "json") {
    text << ahdcov::to_json(records).dump(2) << "\n";
  } else {
    ahdcov::write_csv(text, records);
  }
  int status = emit(c, text.str());
  for (const auto& r : records) {
    if (!r.error.empty()) {
      std::cerr << "error: " << r.model_id << " at lambda=" << r.lambda_per_km2 << "/km^2, delta_h=" << r.delta_h_m
                << " m: " << r.error << "\n";
      if (status == kOk) status = kComputeFailure;
    }
  }
  return status;
}

// eval and simulate work on the single configured point.
ahdcov::RunConfig single_point(ahdcov::RunConfig rc) {
  rc.sweep.variable = ahdcov::SweepSpec::Variable::Lambda;
  rc.sweep.grid = {ahdcov::per_m2_to_per_km2(rc.network.lambda)};
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Downlink coverage probability and spatial throughput with elevated base stations"};
  app.require_subcommand(1);

  Common eval_opts, sim_opts, sweep_opts, crit_opts, val_opts;
  bool numeric = false;
  auto* eval = app.add_subcommand("eval", "Analytic CP and ST (plus bounds for 3+ segments) at one point");
  add_common(eval, eval_opts);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo CP and ST at one point");
  add_common(simulate, sim_opts);
  auto* sweep = app.add_subcommand("sweep", "CP/ST over a density or height grid");
  add_common(sweep, sweep_opts);
  auto* critical = app.add_subcommand("critical", "Critical densities over the height grid");
  add_common(critical, crit_opts);
  critical->add_flag("--numeric", numeric, "Use the numeric search even for single-slope models");

  auto* validate = app.add_subcommand("validate", "Analytic vs Monte Carlo over the validation grid");
  add_common(validate, val_opts, false);
  val_opts.format = "json";
  ahdcov::ValidationSpec vspec;
  bool rice = false, no_truncation = false;
  validate->add_option("--trials", vspec.trials, "Trials per point")->check(CLI::Range(1000ULL, 1ULL << 40));
  validate->add_option("--seed", vspec.seed, "Seed");
  validate->add_option("--threads", vspec.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  validate->add_flag("--rice", rice, "Also simulate Rice fading (nu_nc = 1, nu_dof = 12); reported, not graded");
  validate->add_flag("--no-truncation-check", no_truncation, "Skip the window-doubling bias estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) {
      auto rc = single_point(load(eval_opts));
      rc.sweep.analytic = true;
      rc.sweep.mc = false;
      rc.sweep.bounds = rc.network.model.segments() >= 3;
      return sweep_like(eval_opts, rc);
    }
    if (*simulate) {
      auto rc = single_point(load(sim_opts));
      rc.sweep.analytic = false;
      rc.sweep.mc = true;
      rc.sweep.bounds = false;
      if (rc.sweep.trials < 1000) throw ahdcov::ConfigError("mc.trials", "at least 1000 trials are required");
      return sweep_like(sim_opts, rc);
    }
    if (*sweep) return sweep_like(sweep_opts, load(sweep_opts));
    if (*critical) {
      const auto rc = load(crit_opts);
      print_notes(rc);
      const auto records = ahdcov::run_critical(rc, numeric);
      std::ostringstream text;
      if (crit_opts.format == "json") {
        text << ahdcov::to_json(records).dump(2) << "\n";
      } else {
        ahdcov::write_csv(text, records);
      }
      int status = emit(crit_opts, text.str());
      for (const auto& r : records) {
        if (r.status != "ok" && r.status != "infeasible" && r.status != "unbounded") {
          std::cerr << "error: delta_h=" << r.delta_h_m << " m: " << r.status << "\n";
          if (status == kOk) status = kComputeFailure;
        }
      }
      return status;
    }
    if (*validate) {
      if (rice) vspec.rice = ahdcov::FadingModel::rice(1.0, 12.0);
      vspec.truncation_check = !no_truncation;
      const auto report = ahdcov::run_validate(vspec);
      std::ostringstream text;
      if (val_opts.format == "json") {
        text << ahdcov::to_json(report).dump(2) << "\n";
      } else {
        ahdcov::write_csv(text, report);
      }
      const int status = emit(val_opts, text.str());
      if (status != kOk) return status;
      if (!report.pass) {
        std::cerr << "validation failed\n";
        return kComputeFailure;
      }
      return kOk;
    }
  } catch (const ahdcov::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kComputeFailure;
  }
  return kUsage;
}
