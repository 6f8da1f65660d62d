#pragma once

// Run configuration: flat key=value files with command-line overrides.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cpburgers/cpkernel.hpp"
#include "cpburgers/discretization.hpp"
#include "cpburgers/errors.hpp"
#include "cpburgers/manufactured.hpp"
#include "cpburgers/solver.hpp"

namespace cpb {

enum class SweepAxis { time, space };
enum class OutputFormat { table, csv };

struct RunConfig {
  CpParams cp{};
  double L = 1.0;
  double T = 1.0;
  std::size_t M = 64;
  std::size_t N = 64;
  NewtonSettings newton{};
  std::string problem = "example1";
  SweepAxis sweep_axis = SweepAxis::time;
  std::vector<std::size_t> sweep_levels{8, 16, 32, 64};
  std::string output_path;  // empty: stdout
  OutputFormat output_format = OutputFormat::table;
  HistorySign history_sign = HistorySign::consistent;

  friend bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.cp.alpha == b.cp.alpha && a.cp.rho == b.cp.rho && a.cp.gamma == b.cp.gamma &&
           a.cp.omega == b.cp.omega && a.L == b.L && a.T == b.T && a.M == b.M && a.N == b.N &&
           a.newton.it_acc == b.newton.it_acc && a.newton.max_step == b.newton.max_step &&
           a.problem == b.problem && a.sweep_axis == b.sweep_axis && a.sweep_levels == b.sweep_levels &&
           a.output_path == b.output_path && a.output_format == b.output_format &&
           a.history_sign == b.history_sign;
  }
};

using KeyValues = std::map<std::string, std::string, std::less<>>;

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"alpha", "rho",        "gamma",        "omega",       "L",
                                             "T",     "M",          "N",            "itacc",       "maxstep",
                                             "problem", "sweep.axis", "sweep.levels", "output.path", "output.format",
                                             "history.sign"};
  return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline bool known_key(std::string_view key) {
  for (const auto& k : config_keys())
    if (k == key) return true;
  return false;
}

inline double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("config: " + key + " = '" + text + "' is not a real number");
}

inline std::size_t parse_count(const std::string& key, const std::string& text) {
  // Accepts plain integers and powers written as 2^k.
  const auto caret = text.find('^');
  try {
    std::size_t used = 0;
    if (caret == std::string::npos) {
      if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
      const unsigned long long v = std::stoull(text, &used);
      if (used == text.size()) return static_cast<std::size_t>(v);
    } else {
      const unsigned long long base = std::stoull(text.substr(0, caret), &used);
      if (used != caret) throw std::invalid_argument("base");
      const std::string exp_text = text.substr(caret + 1);
      const unsigned long long exponent = std::stoull(exp_text, &used);
      if (used != exp_text.size() || exponent > 40) throw std::invalid_argument("exponent");
      std::size_t v = 1;
      for (unsigned long long i = 0; i < exponent; ++i) v *= static_cast<std::size_t>(base);
      return v;
    }
  } catch (const std::exception&) {
  }
  throw ValidationError("config: " + key + " = '" + text + "' is not a nonnegative integer");
}

inline std::vector<std::size_t> parse_levels(const std::string& key, const std::string& text) {
  std::vector<std::size_t> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    levels.push_back(parse_count(key, item));
  }
  if (levels.empty()) throw ValidationError("config: sweep.levels must list at least one level");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw ValidationError("config: sweep.levels must be strictly increasing");
  return levels;
}

} // namespace detail

/// Parses key=value lines; '#' starts a comment. Unknown keys are rejected.
inline KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = detail::trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config: line " + std::to_string(line_no) + " is not key=value");
    const std::string key = detail::trim(std::string_view(stripped).substr(0, eq));
    const std::string value = detail::trim(std::string_view(stripped).substr(eq + 1));
    if (!detail::known_key(key)) throw ValidationError("config: unknown key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Builds a validated RunConfig: defaults, then file entries, then
/// overrides (command-line flags win over the file).
inline RunConfig parse_config(std::string_view file_text, const KeyValues& overrides = {}) {
  KeyValues kv = parse_key_values(file_text);
  for (const auto& [key, value] : overrides) {
    if (!detail::known_key(key)) throw ValidationError("config: unknown key '" + key + "'");
    kv[key] = value;
  }

  RunConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "alpha") cfg.cp.alpha = detail::parse_real(key, value);
    else if (key == "rho") cfg.cp.rho = detail::parse_real(key, value);
    else if (key == "gamma") cfg.cp.gamma = detail::parse_real(key, value);
    else if (key == "omega") cfg.cp.omega = detail::parse_real(key, value);
    else if (key == "L") cfg.L = detail::parse_real(key, value);
    else if (key == "T") cfg.T = detail::parse_real(key, value);
    else if (key == "M") cfg.M = detail::parse_count(key, value);
    else if (key == "N") cfg.N = detail::parse_count(key, value);
    else if (key == "itacc") cfg.newton.it_acc = detail::parse_real(key, value);
    else if (key == "maxstep") cfg.newton.max_step = detail::parse_count(key, value);
    else if (key == "problem") cfg.problem = value;
    else if (key == "sweep.axis") {
      if (value == "time") cfg.sweep_axis = SweepAxis::time;
      else if (value == "space") cfg.sweep_axis = SweepAxis::space;
      else throw ValidationError("config: sweep.axis must be time or space");
    } else if (key == "sweep.levels") cfg.sweep_levels = detail::parse_levels(key, value);
    else if (key == "output.path") cfg.output_path = value;
    else if (key == "output.format") {
      if (value == "table") cfg.output_format = OutputFormat::table;
      else if (value == "csv") cfg.output_format = OutputFormat::csv;
      else throw ValidationError("config: output.format must be csv or table");
    } else if (key == "history.sign") {
      if (value == "consistent") cfg.history_sign = HistorySign::consistent;
      else if (value == "literal") cfg.history_sign = HistorySign::literal;
      else throw ValidationError("config: history.sign must be consistent or literal");
    }
  }

  if (!(cfg.cp.alpha > 0.0 && cfg.cp.alpha < 1.0)) throw ValidationError("config: alpha ∈ (0,1) violated");
  if (!(cfg.cp.rho > 0.0)) throw ValidationError("config: rho > 0 violated");
  if (!(cfg.L > 0.0)) throw ValidationError("config: L > 0 violated");
  if (!(cfg.T > 0.0)) throw ValidationError("config: T > 0 violated");
  if (cfg.M < 3) throw ValidationError("config: M >= 3 violated");
  if (cfg.N < 1) throw ValidationError("config: N >= 1 violated");
  if (!(cfg.newton.it_acc > 0.0)) throw ValidationError("config: itacc > 0 violated");
  if (cfg.newton.max_step < 1) throw ValidationError("config: maxstep >= 1 violated");
  if (cfg.sweep_axis == SweepAxis::space)
    for (std::size_t m : cfg.sweep_levels)
      if (m < 3) throw ValidationError("config: sweep.levels must be >= 3 for a space sweep");
  if (cfg.sweep_axis == SweepAxis::time)
    for (std::size_t n : cfg.sweep_levels)
      if (n < 1) throw ValidationError("config: sweep.levels must be >= 1 for a time sweep");
  problem_from_label(cfg.problem, cfg.cp, cfg.L);  // rejects unknown labels
  return cfg;
}

} // namespace cpb
