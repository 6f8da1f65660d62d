#pragma once

// Refinement sweeps over N (time) or M (space) and their CSV / table output.

#include <cstddef>
#include <cstdio>
#include <exception>
#include <future>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cpburgers/config.hpp"
#include "cpburgers/manufactured.hpp"
#include "cpburgers/solver.hpp"

namespace cpb {

struct LevelOutcome {
  double xi = 0.0;
  double time_ms = 0.0;
  std::size_t iterations = 0;
};

/// Solves the configured manufactured problem at one grid size.
inline LevelOutcome run_level(const RunConfig& cfg, std::size_t M, std::size_t N) {
  const ManufacturedProblem mp = problem_from_label(cfg.problem, cfg.cp, cfg.L);
  ProblemSpec problem;
  problem.cp = cfg.cp;
  problem.grid = SpaceGrid(M, cfg.L);
  problem.T = cfg.T;
  problem.N = N;
  problem.phi = mp.phi;
  problem.f = mp.source;
  problem.history_sign = cfg.history_sign;
  const SolveReport report = solve(problem, cfg.newton);
  return {max_error(report, mp, problem.grid, problem.tau()), report.wall_time.count(), report.total_iterations};
}

/// Runs every sweep level (concurrently) and collects rows in level order.
/// The first failing level, in level order, ends the report.
inline ConvergenceReport run_converge(const RunConfig& cfg) {
  std::vector<std::future<LevelOutcome>> jobs;
  jobs.reserve(cfg.sweep_levels.size());
  for (std::size_t level : cfg.sweep_levels) {
    const std::size_t M = cfg.sweep_axis == SweepAxis::space ? level : cfg.M;
    const std::size_t N = cfg.sweep_axis == SweepAxis::time ? level : cfg.N;
    jobs.push_back(std::async(std::launch::async, [&cfg, M, N] { return run_level(cfg, M, N); }));
  }

  ConvergenceReport report;
  report.alpha = cfg.cp.alpha;
  report.axis = cfg.sweep_axis == SweepAxis::time ? "time" : "space";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      const LevelOutcome out = jobs[i].get();
      if (!report.failure) report.append(cfg.sweep_levels[i], out.xi, out.time_ms, out.iterations);
    } catch (const std::exception& e) {
      if (!report.failure)
        report.failure = "level " + std::to_string(cfg.sweep_levels[i]) + " failed: " + e.what();
    }
  }
  return report;
}

namespace detail {
inline std::string format_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
} // namespace detail

/// CSV with header level,xi,theta,time_ms,iterations. Theta is empty on
/// the first row; a failed sweep ends with a '#' comment line.
inline void write_csv(const ConvergenceReport& report, std::ostream& os) {
  os << "level,xi,theta,time_ms,iterations\n";
  for (const auto& r : report.rows) {
    os << r.level << ',' << detail::format_17(r.xi) << ',';
    if (r.theta) os << detail::format_17(*r.theta);
    os << ',' << detail::format_17(r.time_ms) << ',' << r.iterations << '\n';
  }
  if (report.failure) os << "# " << *report.failure << '\n';
}

inline ConvergenceReport read_csv(std::istream& is) {
  ConvergenceReport report;
  std::string line;
  if (!std::getline(is, line) || line != "level,xi,theta,time_ms,iterations")
    throw ValidationError("csv: missing or unexpected header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      report.failure = line.size() > 2 ? line.substr(2) : std::string{};
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw ValidationError("csv: expected 5 columns in '" + line + "'");
    ConvergenceRow r;
    r.level = std::stoull(cells[0]);
    r.xi = std::stod(cells[1]);
    if (!cells[2].empty()) r.theta = std::stod(cells[2]);
    r.time_ms = std::stod(cells[3]);
    r.iterations = std::stoull(cells[4]);
    report.rows.push_back(r);
  }
  return report;
}

/// Aligned text table: alpha, level, Xi, Theta, time, iterations.
inline void write_table(const ConvergenceReport& report, std::ostream& os) {
  const char* level_name = report.axis == "space" ? "M" : "N";
  os << std::setw(6) << "alpha" << std::setw(8) << level_name << std::setw(15) << "Xi" << std::setw(10) << "Theta"
     << std::setw(12) << "time[ms]" << std::setw(12) << "iterations" << '\n';
  for (const auto& r : report.rows) {
    std::ostringstream xi, theta, ms;
    xi << std::scientific << std::setprecision(5) << r.xi;
    if (r.theta) theta << std::fixed << std::setprecision(5) << *r.theta;
    ms << std::fixed << std::setprecision(1) << r.time_ms;
    os << std::setw(6) << report.alpha << std::setw(8) << r.level << std::setw(15) << xi.str() << std::setw(10)
       << theta.str() << std::setw(12) << ms.str() << std::setw(12) << r.iterations << '\n';
  }
  if (report.failure) os << "sweep stopped: " << *report.failure << '\n';
}

} // namespace cpb
