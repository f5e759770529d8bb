// roughcert: build the rough-kernel construction and certify its estimates.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roughcert/config.hpp"
#include "roughcert/construction.hpp"
#include "roughcert/emit.hpp"
#include "roughcert/error.hpp"
#include "roughcert/trignorms.hpp"
#include "roughcert/verify.hpp"

namespace {

using namespace roughcert;

enum Exit { kOk = 0, kChecksFailed = 1, kConfigError = 2, kAborted = 3, kIoError = 4 };

// Flags shared by every subcommand, collected as raw key -> text so the
// config parser sees file and command-line values the same way.
struct SharedFlags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "flat key = value config file (flags override it)");
    add(app, "phi", "--phi", "Young function: power_log:BETA | log_quotient | custom_table:PATH");
    add(app, "mode", "--mode", "schedule | decoupled");
    add(app, "N", "--N", "inverse arc length, e.g. 1e6 or 2^40");
    add(app, "n", "--n", "number of sign pairs (decoupled mode)");
    add(app, "grid", "--grid", "evaluation grid size");
    add(app, "oversample", "--oversample", "trig polynomial oversampling factor");
    add(app, "tol", "--tol", "Luxemburg norm relative tolerance");
    add(app, "p", "--p", "comma-separated exponents, e.g. 4,8");
    add(app, "out", "--out", "output directory");
    add(app, "emit", "--emit", "comma-separated formats: csv,json,svg");
    add(app, "jobs", "--jobs", "worker threads");
    add(app, "s", "--s", "direction geometry: s");
    add(app, "t_start", "--t-start", "direction geometry: first t");
    add(app, "t_step", "--t-step", "direction geometry: t increment");
  }

  void add(CLI::App* app, const std::string& key, const std::string& flag, const std::string& help) {
    options[key] = app->add_option(flag, values[key], help);
  }

  RunConfig resolve() const {
    KeyValues kv;
    if (!config_file.empty()) kv = read_config_file(config_file);
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) kv[key] = values.at(key);
    }
    return parse_config(kv);
  }
};

void print_checks(const VerificationReport& r) {
  for (const auto& c : r.checks) {
    const char* status = c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL";
    std::printf("  %-24s %s  measured %-14s threshold %s\n", c.name.c_str(), status,
                format_number(c.measured).c_str(), format_number(c.threshold).c_str());
  }
  if (r.aborted) std::printf("  ABORTED in stage '%s': %s\n", r.abort_stage.c_str(), r.abort_message.c_str());
}

void print_written(const std::vector<std::string>& paths) {
  for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
}

int cmd_construct(const RunConfig& cfg) {
  const auto cons = circle::build_construction({cfg.N, cfg.n}, cfg.geometry);
  std::printf("N = %s  n = %d  c = %s\n", format_number(cons.N()).c_str(), cons.n(),
              format_number(cons.c).c_str());
  std::printf("geometry: s = %lld  t_start = %lld  t_step = %lld\n", cons.dirs.s, cons.dirs.t_start,
              cons.dirs.t_step);
  std::printf("Omega_n: %zu arcs, integral %s\n", cons.omega.size(),
              format_number(circle::integral(cons.omega)).c_str());
  if (cfg.emit.json) {
    std::printf("wrote %s\n", write_output(cfg.out, "construction.json", construction_json(cons)).c_str());
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const auto report = run_verify(cfg);
  std::printf("verify: N = %s  n = %d  mode %s\n", format_number(cfg.N).c_str(), cfg.n,
              to_string(cfg.mode).c_str());
  print_checks(report);
  print_written(emit_report(report, cfg.emit, cfg.out));
  return report.exit_code();
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.sweep_N.empty() == cfg.sweep_n.empty()) {
    throw ConfigError("sweep_N", "give exactly one of --sweep-N or --sweep-n");
  }
  const Axis axis = cfg.sweep_N.empty() ? Axis::n : Axis::N;
  std::vector<double> values = cfg.sweep_N;
  for (int n : cfg.sweep_n) values.push_back(n);
  const auto reports = run_sweep(cfg, axis, values);
  std::fputs(csv_table(reports).c_str(), stdout);
  int code = kOk;
  std::vector<std::pair<double, double>> ratios;
  for (const auto& r : reports) {
    if (r.exit_code() != kOk) {
      std::printf("point N = %s, n = %d:\n", format_number(r.config.N).c_str(), r.config.n);
      print_checks(r);
    }
    code = std::max(code, r.exit_code());
    if (std::isfinite(r.summary.ratio_p4)) ratios.emplace_back(r.summary.n, r.summary.ratio_p4);
  }
  if (axis == Axis::n && ratios.size() >= 3) {
    try {
      const auto fit = trignorms::fit_exponent(ratios);
      std::printf("ratio_p4 over n: slope %s (target 0.25), residual %s\n",
                  format_number(fit.slope).c_str(), format_number(fit.residual).c_str());
    } catch (const DomainError& e) {
      std::printf("ratio_p4 fit unavailable: %s\n", e.what());
    }
  }
  print_written(emit_sweep(reports, cfg.emit, cfg.out));
  return code;
}

int cmd_norms(const RunConfig& cfg) {
  const int n = cfg.n;
  const auto rs = trignorms::from_signs(trignorms::rudin_shapiro(n));
  const auto sup = trignorms::sup_norm(rs, cfg.oversample);
  std::printf("n = %d\n", n);
  std::printf("sup |RS_n|: grid %s, bound %s, 5 sqrt(n) = %s\n", format_number(sup.grid_max).c_str(),
              format_number(sup.upper_bound).c_str(), format_number(5.0 * std::sqrt(n)).c_str());
  std::printf("%-8s %-20s %-20s %-20s\n", "p", "||D_n||_p", "||RS_n||_p", "ratio");
  for (double p : cfg.p) {
    const double q = p > 2.0 ? p : trignorms::conjugate(p);
    const double d = trignorms::dirichlet_norm(n, q, cfg.oversample);
    const double r = trignorms::lp_norm(rs, q, cfg.oversample);
    std::printf("%-8s %-20s %-20s %-20s%s\n", format_number(q).c_str(), format_number(d).c_str(),
                format_number(r).c_str(), format_number(d / r).c_str(),
                q != p ? "  (conjugate exponent)" : "");
  }
  return kOk;
}

int cmd_plot(RunConfig cfg) {
  cfg.emit = {false, false, true};
  const auto report = run_profile(cfg);
  if (report.aborted) {
    std::printf("ABORTED in stage '%s': %s\n", report.abort_stage.c_str(), report.abort_message.c_str());
  }
  print_written(emit_report(report, cfg.emit, cfg.out));
  return report.aborted ? kAborted : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct the rough-kernel counterexample and certify its estimates"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    CLI::App* app = nullptr;
    SharedFlags flags;
  };
  std::vector<Sub> subs = {
      {"construct", "build the construction and print its geometry", nullptr, {}},
      {"verify", "run every check on one configuration", nullptr, {}},
      {"sweep", "run verify along a list of N or n values", nullptr, {}},
      {"norms", "Dirichlet / Rudin-Shapiro norms and ratios for --n and --p", nullptr, {}},
      {"plot", "write the profile and log-log SVG plots", nullptr, {}},
  };
  for (auto& s : subs) {
    s.app = app.add_subcommand(s.name, s.help);
    s.flags.attach(s.app);
  }
  auto& sweep = subs[2];
  sweep.flags.add(sweep.app, "sweep_N", "--sweep-N", "comma-separated N values");
  sweep.flags.add(sweep.app, "sweep_n", "--sweep-n", "comma-separated n values (decoupled mode)");

  CLI11_PARSE(app, argc, argv);

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    try {
      const RunConfig cfg = s.flags.resolve();
      const std::string name = s.name;
      if (name == "construct") return cmd_construct(cfg);
      if (name == "verify") return cmd_verify(cfg);
      if (name == "sweep") return cmd_sweep(cfg);
      if (name == "norms") return cmd_norms(cfg);
      return cmd_plot(cfg);
    } catch (const ConfigError& e) {
      std::fprintf(stderr, "configuration error: %s\n", e.what());
      return kConfigError;
    } catch (const IoError& e) {
      std::fprintf(stderr, "i/o error: %s\n", e.what());
      return kIoError;
    } catch (const ParameterError& e) {
      std::fprintf(stderr, "parameter error: %s\n", e.what());
      return kConfigError;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "aborted: %s\n", e.what());
      return kAborted;
    }
  }
  return kConfigError;
}
