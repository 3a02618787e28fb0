// Command-line front end: eigen / evolve / limiting / symmetry / sweep.
// All file output is plain CSV or JSON with deterministic formatting, so a
// rerun with the same inputs is byte-identical.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclewalk/cyclewalk.hpp"

namespace cw = cyclewalk;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int exit_config_error = 2;
constexpr int exit_io_error = 3;
constexpr int exit_oracle_scale = 4;

struct cli_error : std::runtime_error {
  int code;
  cli_error(int code, const std::string& what_arg)
      : std::runtime_error(what_arg), code(code) {}
};

cli_error config_error(const std::string& msg) {
  return {exit_config_error, msg};
}
cli_error io_error(const std::string& msg) { return {exit_io_error, msg}; }

/// Optional per-command overrides layered over config-file values.
struct config_flags {
  std::string config_path;
  std::optional<long long> n;
  std::optional<double> a;
  std::optional<double> p0;
  std::optional<double> phi;
  std::optional<long long> x0;
};

void add_config_flags(CLI::App* cmd, config_flags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "JSON config file (walk parameters)");
  cmd->add_option("--n", flags.n, "cycle size (>= 3)");
  cmd->add_option("--a", flags.a, "coin parameter a; b = sqrt(1 - a^2)");
  cmd->add_option("--p0", flags.p0,
                  "initial left weight; q0 = sqrt(1 - p0^2)");
  cmd->add_option("--phi", flags.phi, "initial relative phase (radians)");
  cmd->add_option("--x0", flags.x0, "start node");
}

double json_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw config_error("config key " + key + " must be a number");
  return v.get<double>();
}

/// Resolution order: built-in defaults, then config file, then flags.
/// Omitting b (or q0) derives it from a (or p0); n has no default.
cw::walk_config resolve_config(const config_flags& flags) {
  cw::raw_config raw{};
  raw.n = -1;
  raw.a = std::numbers::sqrt2 / 2.0;
  raw.b = std::numbers::sqrt2 / 2.0;
  raw.x0 = 0;
  raw.p0 = std::numbers::sqrt2 / 2.0;
  raw.q0 = std::numbers::sqrt2 / 2.0;
  raw.phi = std::numbers::pi / 2.0;

  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw io_error("cannot open config file " + flags.config_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& err) {
      throw config_error("config file " + flags.config_path + ": " +
                         err.what());
    }
    if (!doc.is_object()) throw config_error("config root must be an object");
    if (doc.contains("n")) {
      if (!doc["n"].is_number_integer()) {
        throw config_error("config key n must be an integer");
      }
      raw.n = doc["n"].get<long long>();
    }
    if (doc.contains("coin")) {
      const auto& coin = doc["coin"];
      if (!coin.is_object()) throw config_error("config key coin must be an object");
      if (coin.contains("a")) raw.a = json_number(coin["a"], "coin.a");
      if (coin.contains("b")) {
        raw.b = json_number(coin["b"], "coin.b");
      } else if (coin.contains("a")) {
        raw.b = std::sqrt(1.0 - raw.a * raw.a);
      }
    }
    if (doc.contains("init")) {
      const auto& init = doc["init"];
      if (!init.is_object()) throw config_error("config key init must be an object");
      if (init.contains("x0")) {
        if (!init["x0"].is_number_integer()) {
          throw config_error("config key init.x0 must be an integer");
        }
        raw.x0 = init["x0"].get<long long>();
      }
      if (init.contains("p0")) raw.p0 = json_number(init["p0"], "init.p0");
      if (init.contains("q0")) {
        raw.q0 = json_number(init["q0"], "init.q0");
      } else if (init.contains("p0")) {
        raw.q0 = std::sqrt(1.0 - raw.p0 * raw.p0);
      }
      if (init.contains("phi")) raw.phi = json_number(init["phi"], "init.phi");
    }
  }
  if (flags.n) raw.n = *flags.n;
  if (flags.a) {
    raw.a = *flags.a;
    raw.b = *flags.a < 1.0 ? std::sqrt(1.0 - raw.a * raw.a) : 0.0;
  }
  if (flags.p0) {
    raw.p0 = *flags.p0;
    raw.q0 = *flags.p0 < 1.0 ? std::sqrt(1.0 - raw.p0 * raw.p0) : 0.0;
  }
  if (flags.phi) raw.phi = *flags.phi;
  if (flags.x0) raw.x0 = *flags.x0;
  if (raw.n < 0) {
    throw config_error("cycle size not set; pass --n or a config file");
  }
  try {
    return cw::validate_config(raw);
  } catch (const cw::constraint_violation& err) {
    throw config_error(err.what());
  }
}

ordered_json config_json(const cw::walk_config& cfg) {
  ordered_json j;
  j["n"] = cfg.n;
  j["coin"] = {{"a", cfg.coin.a}, {"b", cfg.coin.b}};
  j["init"] = {{"x0", cfg.init.x0},
               {"p0", cfg.init.p0},
               {"q0", cfg.init.q0},
               {"phi", cfg.init.phi}};
  return j;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open output file " + path);
  out << body;
  out.flush();
  if (!out) throw io_error("failed writing output file " + path);
}

/// Every command drops a <out>.manifest.json next to its outputs with the
/// resolved inputs; duration is informational and excluded from any
/// determinism expectations.
void write_manifest(const std::string& out_path, const std::string& command,
                    const ordered_json& inputs,
                    const std::vector<std::string>& outputs,
                    double duration_ms) {
  ordered_json j;
  j["command"] = command;
  j["version"] = cw::version_string;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["duration_ms"] = duration_ms;
  write_file(out_path + ".manifest.json", j.dump(2) + "\n");
}

class stopwatch {
 public:
  double elapsed_ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

int run_eigen(const config_flags& flags, const std::string& out_path) {
  const stopwatch timer;
  const cw::walk_config cfg = resolve_config(flags);
  const cw::eigen_system sys = cw::solve_spectrum(cfg.coin, cfg.n);
  std::string body = "j,sign,theta,re_u,im_u,z,m\n";
  for (std::size_t j = 1; j <= cfg.n; ++j) {
    for (const int sign : {+1, -1}) {
      const cw::spectral_point& p = sys.at(j, sign);
      body += std::to_string(p.j);
      body += sign > 0 ? ",+," : ",-,";
      body += cw::format_double(p.theta);
      body += ',';
      body += cw::format_double(p.u.real());
      body += ',';
      body += cw::format_double(p.u.imag());
      body += ',';
      body += cw::format_double(p.z);
      body += ',';
      body += cw::format_double(p.m);
      body += '\n';
    }
  }
  write_file(out_path, body);
  write_manifest(out_path, "eigen", config_json(cfg), {out_path},
                 timer.elapsed_ms());
  return 0;
}

void append_distribution_rows(std::string& body,
                              const cw::distance_distribution& dist,
                              const std::string& row_prefix) {
  const std::size_t n = dist.size();
  const auto lo = -static_cast<long long>(n / 2);
  const auto hi = static_cast<long long>((n + 1) / 2);
  for (long long sd = lo; sd < hi; ++sd) {
    body += row_prefix;
    body += std::to_string(sd);
    body += ',';
    body += cw::format_double(dist[cw::distance_mod(sd, n)]);
    body += '\n';
  }
}

int run_evolve(const config_flags& flags, std::uint64_t t_max,
               std::uint64_t stride, const std::string& out_path) {
  const stopwatch timer;
  const cw::walk_config cfg = resolve_config(flags);
  cw::evolution_trace trace;
  try {
    trace = cw::probability_trace(cfg, t_max, stride);
  } catch (const cw::constraint_violation& err) {
    throw config_error(err.what());
  }
  std::string body = "t,d,p\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    append_distribution_rows(body, trace.dists[i],
                             std::to_string(trace.times[i]) + ',');
  }
  write_file(out_path, body);
  ordered_json inputs = config_json(cfg);
  inputs["t_max"] = t_max;
  inputs["stride"] = stride;
  write_manifest(out_path, "evolve", inputs, {out_path}, timer.elapsed_ms());
  return 0;
}

int run_limiting(const config_flags& flags, bool with_oracle,
                 const std::string& out_path) {
  const stopwatch timer;
  const cw::walk_config cfg = resolve_config(flags);
  const cw::limiting_breakdown lim = cw::limiting_distribution(cfg);
  std::string body;
  if (with_oracle) {
    const cw::distance_distribution oracle = cw::limiting_projector_oracle(cfg);
    body = "d,pi,pi_oracle,abs_err\n";
    const auto lo = -static_cast<long long>(cfg.n / 2);
    const auto hi = static_cast<long long>((cfg.n + 1) / 2);
    for (long long sd = lo; sd < hi; ++sd) {
      const std::size_t d = cw::distance_mod(sd, cfg.n);
      body += std::to_string(sd);
      body += ',';
      body += cw::format_double(lim.pi[d]);
      body += ',';
      body += cw::format_double(oracle[d]);
      body += ',';
      body += cw::format_double(std::abs(lim.pi[d] - oracle[d]));
      body += '\n';
    }
  } else {
    body = "d,pi\n";
    append_distribution_rows(body, lim.pi, "");
  }
  write_file(out_path, body);
  ordered_json inputs = config_json(cfg);
  inputs["with_oracle"] = with_oracle;
  write_manifest(out_path, "limiting", inputs, {out_path},
                 timer.elapsed_ms());
  return 0;
}

int run_symmetry(const config_flags& flags, std::uint64_t t_max,
                 std::vector<double> epsilon_grid,
                 const std::string& out_path) {
  const stopwatch timer;
  const cw::walk_config cfg = resolve_config(flags);
  if (epsilon_grid.empty()) {
    epsilon_grid = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5};
  }
  for (std::size_t i = 0; i < epsilon_grid.size(); ++i) {
    if (!(epsilon_grid[i] > 0.0)) {
      throw config_error("epsilon grid entries must be positive");
    }
    if (i > 0 && epsilon_grid[i] >= epsilon_grid[i - 1]) {
      throw config_error("epsilon grid must be strictly descending");
    }
  }
  cw::symmetry_trace trace;
  try {
    trace = cw::variation_trace(cfg, t_max);
  } catch (const cw::constraint_violation& err) {
    throw config_error(err.what());
  }

  const std::string variation_path = out_path + ".variation.csv";
  std::string body = "t,v\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    body += std::to_string(trace.times[i]);
    body += ',';
    body += cw::format_double(trace.v[i]);
    body += '\n';
  }
  write_file(variation_path, body);

  const std::string mixing_path = out_path + ".mixing.csv";
  body = "epsilon,m_epsilon\n";
  for (const double eps : epsilon_grid) {
    const cw::mixing_report rep = cw::mixing_time(trace, eps);
    body += cw::format_double(eps);
    body += ',';
    body += rep.converged() ? std::to_string(*rep.m_epsilon) : "unconverged";
    body += '\n';
  }
  write_file(mixing_path, body);

  const std::string report_path = out_path + ".report.json";
  ordered_json report;
  report["residual"] = cw::symmetry_residual(cfg.coin, cfg.init);
  report["symmetric_phases"] =
      cw::solve_symmetric_phase(cfg.coin, cfg.init.p0);
  // Fit from a thousandth of the horizon onward so the window spans the
  // decaying part of V(t) rather than only its late-time floor.
  const std::uint64_t slope_lo = std::max<std::uint64_t>(1, t_max / 1000);
  report["slope_window"] = {slope_lo, t_max};
  report["envelope_slope"] = nullptr;
  if (slope_lo < t_max) {
    try {
      report["envelope_slope"] = cw::envelope_slope(trace, slope_lo, t_max);
    } catch (const cw::insufficient_samples&) {
    }
  }
  write_file(report_path, report.dump(2) + "\n");

  ordered_json inputs = config_json(cfg);
  inputs["t_max"] = t_max;
  inputs["epsilon_grid"] = epsilon_grid;
  write_manifest(out_path, "symmetry", inputs,
                 {variation_path, mixing_path, report_path},
                 timer.elapsed_ms());
  return 0;
}

std::vector<double> grid_axis(const nlohmann::json& doc, const char* key,
                              double fallback) {
  if (!doc.contains(key)) return {fallback};
  const auto& v = doc.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) {
    throw config_error(std::string("grid key ") + key +
                       " must be a number or an array");
  }
  std::vector<double> out;
  for (const auto& item : v) {
    if (!item.is_number()) {
      throw config_error(std::string("grid key ") + key +
                         " holds a non-number");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

unsigned sweep_thread_count(std::size_t rows) {
  unsigned threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (const char* env = std::getenv("CYCLEWALK_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      throw config_error("CYCLEWALK_THREADS must be a positive integer");
    }
    threads = static_cast<unsigned>(parsed);
  }
  if (rows < threads) threads = rows == 0 ? 1 : static_cast<unsigned>(rows);
  return threads;
}

int run_sweep(const std::string& grid_path, const std::string& out_path) {
  const stopwatch timer;
  std::ifstream in(grid_path);
  if (!in) throw io_error("cannot open grid file " + grid_path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw config_error("grid file " + grid_path + ": " + err.what());
  }
  if (!doc.is_object()) throw config_error("grid root must be an object");
  if (!doc.contains("n")) throw config_error("grid must list n values");

  const std::vector<double> ns = grid_axis(doc, "n", 0.0);
  const std::vector<double> as =
      grid_axis(doc, "a", std::numbers::sqrt2 / 2.0);
  const std::vector<double> x0s = grid_axis(doc, "x0", 0.0);
  const std::vector<double> p0s =
      grid_axis(doc, "p0", std::numbers::sqrt2 / 2.0);
  const std::vector<double> phis =
      grid_axis(doc, "phi", std::numbers::pi / 2.0);
  std::uint64_t t_max = 0;
  if (doc.contains("t_max")) {
    if (!doc["t_max"].is_number_integer() || doc["t_max"].get<long long>() < 0) {
      throw config_error("grid key t_max must be a nonnegative integer");
    }
    t_max = doc["t_max"].get<std::uint64_t>();
  }
  std::optional<double> epsilon;
  if (doc.contains("epsilon")) {
    epsilon = json_number(doc["epsilon"], "epsilon");
    if (!(*epsilon > 0.0)) throw config_error("grid key epsilon must be positive");
  }
  if (epsilon && t_max == 0) {
    throw config_error("grid key epsilon needs a positive t_max");
  }

  // Cartesian order: n, a, x0, p0, phi (rightmost fastest), one row each.
  std::vector<cw::walk_config> configs;
  for (const double nv : ns) {
    for (const double av : as) {
      for (const double x0v : x0s) {
        for (const double p0v : p0s) {
          for (const double phiv : phis) {
            cw::raw_config raw{};
            raw.n = static_cast<long long>(nv);
            if (static_cast<double>(raw.n) != nv) {
              throw config_error("grid n values must be integers");
            }
            raw.a = av;
            raw.b = av < 1.0 ? std::sqrt(1.0 - av * av) : 0.0;
            raw.x0 = static_cast<long long>(x0v);
            if (static_cast<double>(raw.x0) != x0v) {
              throw config_error("grid x0 values must be integers");
            }
            raw.p0 = p0v;
            raw.q0 = p0v < 1.0 ? std::sqrt(1.0 - p0v * p0v) : 0.0;
            raw.phi = phiv;
            try {
              configs.push_back(cw::validate_config(raw));
            } catch (const cw::constraint_violation& err) {
              throw config_error(std::string("grid point invalid: ") +
                                 err.what());
            }
          }
        }
      }
    }
  }

  std::vector<std::string> rows(configs.size());
  const auto fill_row = [&](std::size_t i) {
    const cw::walk_config& cfg = configs[i];
    const double residual = cw::symmetry_residual(cfg.coin, cfg.init);
    const cw::limiting_breakdown lim = cw::limiting_distribution(cfg);
    double max_asym = 0.0;
    for (std::size_t d = 1; d < cfg.n; ++d) {
      max_asym =
          std::max(max_asym, std::abs(lim.pi[d] - lim.pi[cfg.n - d]));
    }
    std::string& row = rows[i];
    row += std::to_string(cfg.n);
    row += ',';
    row += cw::format_double(cfg.coin.a);
    row += ',';
    row += cw::format_double(cfg.coin.b);
    row += ',';
    row += std::to_string(cfg.init.x0);
    row += ',';
    row += cw::format_double(cfg.init.p0);
    row += ',';
    row += cw::format_double(cfg.init.q0);
    row += ',';
    row += cw::format_double(cfg.init.phi);
    row += ',';
    row += cw::format_double(residual);
    row += ',';
    row += cw::format_double(max_asym);
    if (t_max > 0) {
      const cw::symmetry_trace trace = cw::variation_trace(cfg, t_max);
      row += ',';
      row += cw::format_double(trace.v.back());
      if (epsilon) {
        const cw::mixing_report rep = cw::mixing_time(trace, *epsilon);
        row += ',';
        row +=
            rep.converged() ? std::to_string(*rep.m_epsilon) : "unconverged";
      }
    }
    row += '\n';
  };

  const unsigned threads = sweep_thread_count(rows.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) fill_row(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= rows.size()) return;
          fill_row(i);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  std::string body = "n,a,b,x0,p0,q0,phi,residual,max_pi_asym";
  if (t_max > 0) {
    body += ",v_final";
    if (epsilon) body += ",m_epsilon";
  }
  body += '\n';
  for (const std::string& row : rows) body += row;
  write_file(out_path, body);

  ordered_json inputs;
  inputs["grid_file"] = grid_path;
  inputs["grid"] = doc;
  inputs["rows"] = rows.size();
  inputs["threads"] = threads;
  write_manifest(out_path, "sweep", inputs, {out_path}, timer.elapsed_ms());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum walks on n-cycles: spectra, limiting distributions, "
               "symmetry analysis"};
  app.set_version_flag("--version", cw::version_string);
  app.require_subcommand(1);

  config_flags flags;
  std::string out_path;
  std::uint64_t t_max = 100;
  std::uint64_t stride = 1;
  bool with_oracle = false;
  std::vector<double> epsilon_grid;
  std::string grid_path;

  CLI::App* eigen = app.add_subcommand(
      "eigen", "closed-form eigensystem of the step operator");
  add_config_flags(eigen, flags);
  eigen->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* evolve = app.add_subcommand(
      "evolve", "step the walk and record position distributions");
  add_config_flags(evolve, flags);
  evolve->add_option("--t-max", t_max, "final time step");
  evolve->add_option("--stride", stride, "record every stride-th step");
  evolve->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* limiting = app.add_subcommand(
      "limiting", "closed-form limiting distribution pi(d)");
  add_config_flags(limiting, flags);
  limiting->add_flag("--with-oracle", with_oracle,
                     "also compute the projector-sum oracle column");
  limiting->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* symmetry = app.add_subcommand(
      "symmetry", "variation trace, mixing times, and symmetry report");
  add_config_flags(symmetry, flags);
  symmetry->add_option("--t-max", t_max, "trace horizon");
  symmetry->add_option("--epsilon-grid", epsilon_grid,
                       "descending thresholds (comma separated)")
      ->delimiter(',');
  symmetry->add_option("--out", out_path, "output path stem")->required();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate residuals and limiting asymmetry over a grid");
  sweep->add_option("--grid", grid_path, "JSON grid file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : exit_config_error;
  }

  try {
    if (eigen->parsed()) return run_eigen(flags, out_path);
    if (evolve->parsed()) return run_evolve(flags, t_max, stride, out_path);
    if (limiting->parsed()) return run_limiting(flags, with_oracle, out_path);
    if (symmetry->parsed()) {
      return run_symmetry(flags, t_max, epsilon_grid, out_path);
    }
    if (sweep->parsed()) return run_sweep(grid_path, out_path);
  } catch (const cli_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return err.code;
  } catch (const cw::oracle_scale_exceeded& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return exit_oracle_scale;
  } catch (const cw::constraint_violation& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return exit_config_error;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
