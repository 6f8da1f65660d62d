// cpburgers: solve, refinement sweeps, Prabhakar evaluation and self-checks
// for the time-fractional Burgers scheme.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cpburgers/config.hpp"
#include "cpburgers/errors.hpp"
#include "cpburgers/manufactured.hpp"
#include "cpburgers/mlf.hpp"
#include "cpburgers/solver.hpp"
#include "cpburgers/sweep.hpp"
#include "cpburgers/verify.hpp"

namespace {

enum ExitCode { ok = 0, validation = 1, numerical = 2, verification = 3 };

struct ConfigFlags {
  std::string file;
  std::map<std::string, std::string> values;

  void attach(CLI::App& app) {
    app.add_option("-c,--config", file, "key=value configuration file");
    const std::pair<const char*, const char*> flags[] = {
        {"--alpha", "alpha"},         {"--rho", "rho"},
        {"--gamma", "gamma"},         {"--omega", "omega"},
        {"--L", "L"},                 {"--T", "T"},
        {"--M", "M"},                 {"--N", "N"},
        {"--itacc", "itacc"},         {"--maxstep", "maxstep"},
        {"--problem", "problem"},     {"--sweep-axis", "sweep.axis"},
        {"--sweep-levels", "sweep.levels"}, {"--output", "output.path"},
        {"--format", "output.format"}, {"--history-sign", "history.sign"},
    };
    for (const auto& [flag, key] : flags) {
      std::string k = key;
      app.add_option_function<std::string>(
          flag, [this, k](const std::string& v) { values[k] = v; }, "override " + k);
    }
  }

  cpb::RunConfig resolve() const {
    const std::string text = file.empty() ? std::string{} : cpb::read_text_file(file);
    cpb::KeyValues overrides(values.begin(), values.end());
    return cpb::parse_config(text, overrides);
  }
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw cpb::ValidationError("output: cannot open '" + path + "'");
  return file;
}

int run_solve(const ConfigFlags& flags) {
  const cpb::RunConfig cfg = flags.resolve();
  const cpb::ManufacturedProblem mp = cpb::problem_from_label(cfg.problem, cfg.cp, cfg.L);
  cpb::ProblemSpec problem;
  problem.cp = cfg.cp;
  problem.grid = cpb::SpaceGrid(cfg.M, cfg.L);
  problem.T = cfg.T;
  problem.N = cfg.N;
  problem.phi = mp.phi;
  problem.f = mp.source;
  problem.history_sign = cfg.history_sign;
  const cpb::SolveReport report = cpb::solve(problem, cfg.newton);
  const double xi = cpb::max_error(report, mp, problem.grid, problem.tau());

  std::ofstream file;
  std::ostream& out = open_output(cfg.output_path, file);
  if (cfg.output_format == cpb::OutputFormat::csv) {
    out << "x,u,exact\n";
    const auto& last = report.levels.back();
    char buf[128];
    for (std::size_t i = 0; i < last.size(); ++i) {
      const double x = problem.grid.x(i + 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, last[i], mp.exact(x, cfg.T));
      out << buf;
    }
  } else {
    out << "problem     " << mp.label << "\n"
        << "alpha       " << cfg.cp.alpha << "  rho " << cfg.cp.rho << "  gamma " << cfg.cp.gamma << "  omega "
        << cfg.cp.omega << "\n"
        << "grid        M = " << cfg.M << ", N = " << cfg.N << "\n"
        << "Xi          " << std::scientific << std::setprecision(5) << xi << "\n"
        << "iterations  " << report.total_iterations << "\n"
        << "time[ms]    " << std::fixed << std::setprecision(1) << report.wall_time.count() << "\n";
  }
  return ok;
}

int run_converge_cmd(const ConfigFlags& flags) {
  const cpb::RunConfig cfg = flags.resolve();
  const cpb::ConvergenceReport report = cpb::run_converge(cfg);
  std::ofstream file;
  std::ostream& out = open_output(cfg.output_path, file);
  if (cfg.output_format == cpb::OutputFormat::csv)
    cpb::write_csv(report, out);
  else
    cpb::write_table(report, out);
  if (report.failure) {
    std::cerr << "error: " << *report.failure << "\n";
    return numerical;
  }
  return ok;
}

int run_verify_cmd(bool tamper) {
  cpb::VerifyOptions options;
  options.tamper_stencil = tamper;
  const auto results = cpb::run_verify(options);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %-42s %9.1f ms  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.ms, r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "all suites passed" : "verification FAILED");
  return all ? ok : verification;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Caputo-Prabhakar time-fractional Burgers solver"};
  app.require_subcommand(1);

  ConfigFlags solve_flags, converge_flags;
  auto* solve_cmd = app.add_subcommand("solve", "solve one manufactured problem and report the max error");
  solve_flags.attach(*solve_cmd);
  auto* converge_cmd = app.add_subcommand("converge", "refinement sweep in time or space");
  converge_flags.attach(*converge_cmd);

  double a = 1.0, b = 1.0, g = 1.0, z = 0.0, tol = 1e-15;
  auto* mlf_cmd = app.add_subcommand("mlf", "evaluate the Prabhakar function E_{a,b}^{g}(z)");
  mlf_cmd->add_option("--a", a, "first parameter (> 0)");
  mlf_cmd->add_option("--b", b, "second parameter (> 0)");
  mlf_cmd->add_option("--g", g, "third parameter");
  mlf_cmd->add_option("--z", z, "argument")->required();
  mlf_cmd->add_option("--tol", tol, "truncation tolerance in (0, 1e-3]");

  bool tamper = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_flag("--tamper-stencil", tamper, "bias the central difference (the skew-symmetry suite must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : validation;
  }

  try {
    if (*solve_cmd) return run_solve(solve_flags);
    if (*converge_cmd) return run_converge_cmd(converge_flags);
    if (*mlf_cmd) {
      const auto r = cpb::prabhakar_e_detailed({a, b, g}, z, tol);
      std::printf("value %.17g\nterms %zu\n", r.value, r.terms);
      if (r.extended) std::printf("note  summed in extended precision\n");
      if (r.precision_loss) std::printf("warning cancellation ratio %.3g\n", r.cancellation);
      return ok;
    }
    if (*verify_cmd) return run_verify_cmd(tamper);
  } catch (const cpb::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation;
  } catch (const cpb::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return numerical;
  }
  return ok;
}
