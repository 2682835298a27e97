#include "kendall/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kendall/convolution.hpp"
#include "kendall/empirical.hpp"
#include "kendall/excursions.hpp"
#include "kendall/verify.hpp"
#include "kendall/walk.hpp"
#include "kendall/williamson.hpp"

namespace kendall::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double_at(const std::string& text, std::size_t offset_in_spec) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw SpecError("expected a number, got '" + text + "'", offset_in_spec);
  }
  return v;
}

long parse_long_at(const std::string& text, std::size_t offset_in_spec) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw SpecError("expected an integer, got '" + text + "'", offset_in_spec);
  }
  return v;
}

StepDistribution load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file '" + path + "'");
  std::vector<double> grid;
  std::vector<double> cdf;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double t = 0.0;
    double f = 0.0;
    if (!(row >> t >> f)) {
      if (line_no == 1) continue;  // header row
      throw std::runtime_error("table file '" + path + "': malformed line " +
                               std::to_string(line_no));
    }
    grid.push_back(t);
    cdf.push_back(f);
  }
  return StepDistribution::tabulated(std::move(grid), std::move(cdf));
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("CSV is missing a '" + name + "' column");
  }
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file '" + path + "'");
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (first) {
      csv.header = cells;
      csv.columns.assign(cells.size(), {});
      first = false;
      continue;
    }
    for (std::size_t i = 0; i < cells.size() && i < csv.columns.size(); ++i) {
      csv.columns[i].push_back(std::strtod(cells[i].c_str(), nullptr));
    }
  }
  if (csv.header.empty()) throw std::runtime_error("CSV file '" + path + "' is empty");
  return csv;
}

// Resolves --out: file when set, the session stream otherwise.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KENDALL_SEED")) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && errno != ERANGE) return v;
    throw std::invalid_argument("KENDALL_SEED is set but not a valid unsigned integer");
  }
  return 12345;
}

WalkMode parse_mode(const std::string& mode) {
  if (mode == "kernel") return WalkMode::kernel;
  if (mode == "recursion") return WalkMode::recursion;
  if (mode == "recursion-literal") return WalkMode::recursion_literal;
  throw std::runtime_error("unknown walk mode '" + mode + "'");
}

}  // namespace

SpecError::SpecError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
      position_(position) {}

StepDistribution parse_dist_spec(const std::string& spec) {
  if (spec.empty()) throw SpecError("empty distribution spec", 0);
  if (spec == "uniform") return StepDistribution::uniform();
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw SpecError("unknown distribution '" + spec +
                        "' (expected uniform, two-point:x=, pareto:p=, mixture:p=, table:<path>)",
                    0);
  }
  const std::string family = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (family == "table") {
    if (rest.empty()) throw SpecError("table spec needs a file path", colon + 1);
    return load_table(rest);
  }
  const std::size_t eq = rest.find('=');
  if (eq == std::string::npos) {
    throw SpecError("expected key=value after '" + family + ":'", colon + 1);
  }
  const std::string key = rest.substr(0, eq);
  const double value = parse_double_at(rest.substr(eq + 1), colon + 1 + eq + 1);
  if (family == "two-point" && key == "x") return StepDistribution::two_point(value);
  if (family == "pareto" && key == "p") return StepDistribution::pareto(value);
  if (family == "mixture" && key == "p") return StepDistribution::mixture(value);
  throw SpecError("unknown distribution '" + family + ":" + key + "='", 0);
}

std::vector<double> parse_grid(const std::string& spec) {
  const std::size_t c1 = spec.find(':');
  const std::size_t c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw SpecError("grid must be start:stop:count, got '" + spec + "'", 0);
  }
  const double start = parse_double_at(spec.substr(0, c1), 0);
  const double stop = parse_double_at(spec.substr(c1 + 1, c2 - c1 - 1), c1 + 1);
  const long count = parse_long_at(spec.substr(c2 + 1), c2 + 1);
  if (count < 2) throw SpecError("grid count must be >= 2, got '" + spec.substr(c2 + 1) + "'",
                                 c2 + 1);
  if (!(start < stop)) throw SpecError("grid needs start < stop in '" + spec + "'", 0);
  std::vector<double> points(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    points[static_cast<std::size_t>(i)] =
        start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return points;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string token =
        spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const long v = parse_long_at(token, pos);
    if (v < 1) throw SpecError("expected a positive integer, got '" + token + "'", pos);
    out.push_back(static_cast<int>(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

namespace {

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kendall generalized-convolution toolkit"};
  app.require_subcommand(1);

  std::string dist_spec = "uniform";
  std::string t_grid;
  std::string s_grid;
  std::string u_grid;
  std::string out_path;
  std::string records_path;
  std::string transform_path;
  std::string marginals;
  std::string mode = "kernel";
  std::string suite = "all";
  double alpha_value = 1.0;
  double x = 0.0;
  double y = 0.0;
  double x0 = 0.0;
  double scale = 1.0;
  int n_fold = 1;
  int steps = 1;
  int terms = 60;
  std::int64_t paths = 1;
  std::int64_t wh_paths = 100000;
  std::optional<std::uint64_t> seed_flag;

  const auto add_alpha = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha_value, "convolution exponent alpha > 0")->required();
  };
  const auto add_dist = [&](CLI::App* cmd) {
    cmd->add_option("--dist", dist_spec,
                    "step distribution (uniform | two-point:x= | pareto:p= | mixture:p= | "
                    "table:<csv>)")
        ->required();
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };
  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed_flag, "master seed (default: KENDALL_SEED or 12345)");
  };

  CLI::App* transform = app.add_subcommand("transform", "Williamson transform on a t grid");
  add_dist(transform);
  add_alpha(transform);
  transform->add_option("--t-grid", t_grid, "grid start:stop:count")->required();
  add_out(transform);

  CLI::App* invert = app.add_subcommand("invert", "recover the CDF from a transform CSV");
  invert->add_option("--transform", transform_path, "CSV produced by the transform subcommand")
      ->required();
  add_alpha(invert);
  add_out(invert);

  CLI::App* convolve = app.add_subcommand("convolve", "point-pair convolution kernel mass");
  convolve->add_option("--x", x, "first point")->required();
  convolve->add_option("--y", y, "second point")->required();
  add_alpha(convolve);
  convolve->add_option("--t-grid", t_grid, "grid start:stop:count")->required();
  add_out(convolve);

  CLI::App* power = app.add_subcommand("power-cdf", "n-fold convolution power CDF");
  add_dist(power);
  power->add_option("--n", n_fold, "convolution order n >= 1")
      ->required()
      ->check(CLI::Range(1, 1 << 30));
  add_alpha(power);
  power->add_option("--t-grid", t_grid, "grid start:stop:count")->required();
  add_out(power);

  CLI::App* limit = app.add_subcommand("limit-cdf", "stable limit law CDF");
  add_alpha(limit);
  limit->add_option("--t-grid", t_grid, "grid start:stop:count")->required();
  add_out(limit);

  CLI::App* simulate = app.add_subcommand("simulate", "simulate walk trajectories");
  add_dist(simulate);
  add_alpha(simulate);
  simulate->add_option("--steps", steps, "steps per path (>= 1)")
      ->required()
      ->check(CLI::Range(1, 1 << 30));
  simulate->add_option("--paths", paths, "number of paths (>= 1)")
      ->required()
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  simulate->add_option("--mode", mode, "kernel | recursion | recursion-literal");
  add_seed(simulate);
  simulate->add_option("--x0", x0, "starting point (default 0)");
  simulate->add_option("--out", out_path, "trajectory CSV (path_id, step, value)");
  simulate->add_option("--records", records_path,
                       "first-passage CSV (path_id, tau, overshoot); stdout when neither "
                       "--out nor --records is given");
  simulate->add_option("--marginals", marginals,
                       "comma-separated checkpoint steps; thins --out to those steps");

  CLI::App* hitting = app.add_subcommand("hitting", "first-passage analytics on a t grid");
  add_dist(hitting);
  add_alpha(hitting);
  hitting->add_option("--t-grid", t_grid, "grid start:stop:count")->required();
  hitting->add_option("--terms", terms, "partial-sum terms (default 60)")
      ->check(CLI::Range(1, 100000));
  add_out(hitting);

  CLI::App* wienerhopf = app.add_subcommand("wienerhopf", "joint transform: closed form vs MC");
  add_dist(wienerhopf);
  add_alpha(wienerhopf);
  wienerhopf->add_option("--s-grid", s_grid, "grid start:stop:count in [0, 1]")->required();
  wienerhopf->add_option("--u-grid", u_grid, "grid start:stop:count, u > 0")->required();
  wienerhopf->add_option("--paths", wh_paths, "MC paths (default 100000)")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  wienerhopf->add_option("--steps", steps, "MC horizon (default 60)")
      ->check(CLI::Range(1, 1 << 20));
  add_seed(wienerhopf);
  add_out(wienerhopf);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", suite,
                         "all | exact-identities | quadrature-identities | mc-laws");
  add_seed(verify_cmd);
  verify_cmd->add_option("--scale", scale, "sample-size multiplier (default 1)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", out_path, "report JSON file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  steps = wienerhopf->parsed() && !wienerhopf->count("--steps") ? 60 : steps;
  const std::uint64_t seed = seed_flag ? *seed_flag : default_seed();

  if (transform->parsed()) {
    const StepDistribution dist = parse_dist_spec(dist_spec);
    const Alpha alpha(alpha_value);
    OutputTarget target(out_path, out);
    target.stream() << "t,nu_hat,g\n";
    for (double t : parse_grid(t_grid)) {
      const double nu = williamson_transform(dist, alpha, t);
      const double g = t != 0.0 ? williamson_g(dist, alpha, std::abs(t)) : 0.0;
      target.stream() << fmt(t) << ',' << fmt(nu) << ',' << fmt(g) << '\n';
    }
    return 0;
  }

  if (invert->parsed()) {
    const Alpha alpha(alpha_value);
    const Csv csv = read_csv(transform_path);
    const auto& ts = csv.columns[csv.column("t")];
    const auto& gs = csv.columns[csv.column("g")];
    std::vector<double> t_pos;
    std::vector<double> g_pos;
    for (std::size_t i = 0; i < ts.size() && i < gs.size(); ++i) {
      if (ts[i] > 0.0) {
        t_pos.push_back(ts[i]);
        g_pos.push_back(gs[i]);
      }
    }
    const std::vector<double> cdf = cdf_from_transform_grid(t_pos, g_pos, alpha);
    OutputTarget target(out_path, out);
    target.stream() << "t,cdf\n";
    std::size_t jumps = 0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
      if (std::isnan(cdf[i])) {
        ++jumps;
        continue;
      }
      target.stream() << fmt(t_pos[i]) << ',' << fmt(cdf[i]) << '\n';
    }
    if (jumps > 0) {
      err << "invert: skipped " << jumps << " grid point(s) at detected CDF jumps\n";
    }
    return 0;
  }

  if (convolve->parsed()) {
    const Alpha alpha(alpha_value);
    OutputTarget target(out_path, out);
    target.stream() << "t,kernel_cdf\n";
    for (double t : parse_grid(t_grid)) {
      target.stream() << fmt(t) << ',' << fmt(kernel_cdf_h(x, y, t, alpha)) << '\n';
    }
    return 0;
  }

  if (power->parsed()) {
    const ConvolutionPowerLaw law{parse_dist_spec(dist_spec), n_fold, Alpha(alpha_value)};
    OutputTarget target(out_path, out);
    target.stream() << "t,cdf\n";
    std::size_t jumps = 0;
    for (double t : parse_grid(t_grid)) {
      try {
        target.stream() << fmt(t) << ',' << fmt(power_cdf(law, t)) << '\n';
      } catch (const JumpDetected&) {
        ++jumps;
      }
    }
    if (jumps > 0) err << "power-cdf: skipped " << jumps << " grid point(s) at CDF jumps\n";
    return 0;
  }

  if (limit->parsed()) {
    const Alpha alpha(alpha_value);
    OutputTarget target(out_path, out);
    target.stream() << "t,cdf\n";
    for (double t : parse_grid(t_grid)) {
      target.stream() << fmt(t) << ',' << fmt(stable_limit_cdf(t, alpha)) << '\n';
    }
    return 0;
  }

  if (simulate->parsed()) {
    WalkConfig config{parse_dist_spec(dist_spec), Alpha(alpha_value), steps, paths,
                      parse_mode(mode), seed, x0,
                      marginals.empty() ? std::vector<int>{} : parse_int_list(marginals), 0};
    const WalkBatch batch = simulate_batch(config);

    if (!out_path.empty()) {
      OutputTarget target(out_path, out);
      target.stream() << "path_id,step,value\n";
      if (!batch.checkpoint_steps.empty()) {
        for (std::size_t p = 0; p < batch.checkpoint_values[0].size(); ++p) {
          for (std::size_t ci = 0; ci < batch.checkpoint_steps.size(); ++ci) {
            target.stream() << p << ',' << batch.checkpoint_steps[ci] << ','
                            << fmt(batch.checkpoint_values[ci][p]) << '\n';
          }
        }
      } else if (batch.has_trajectories()) {
        for (std::size_t p = 0; p < batch.trajectories.size(); ++p) {
          for (std::size_t k = 0; k < batch.trajectories[p].size(); ++k) {
            target.stream() << p << ',' << (k + 1) << ',' << fmt(batch.trajectories[p][k]) << '\n';
          }
        }
      } else {
        err << "simulate: trajectory storage budget exceeded; pass --marginals to retain "
               "checkpoint marginals\n";
      }
    }

    const bool records_to_stdout = out_path.empty() && records_path.empty();
    if (!records_path.empty() || records_to_stdout) {
      OutputTarget target(records_path, out);
      target.stream() << "path_id,tau,overshoot\n";
      for (std::size_t p = 0; p < batch.up_crossings.size(); ++p) {
        const auto& rec = batch.up_crossings[p];
        if (rec.tau == 0) continue;  // min of the empty set: no row
        target.stream() << p << ',' << rec.tau << ',' << fmt(rec.value) << '\n';
      }
    }
    return 0;
  }

  if (hitting->parsed()) {
    const ExcursionLaw law(parse_dist_spec(dist_spec), Alpha(alpha_value));
    OutputTarget target(out_path, out);
    target.stream() << "t,overshoot_cdf,phi_partial_sum\n";
    for (double t : parse_grid(t_grid)) {
      if (!(t > 0.0)) continue;
      double partial = 0.0;
      for (int k = 1; k <= terms; ++k) partial += phi_n(law, k, t);
      target.stream() << fmt(t) << ',' << fmt(overshoot_cdf(law, t)) << ',' << fmt(partial)
                      << '\n';
    }
    return 0;
  }

  if (wienerhopf->parsed()) {
    const StepDistribution dist = parse_dist_spec(dist_spec);
    const Alpha alpha(alpha_value);
    const ExcursionLaw law(dist, alpha);
    const WalkConfig config{dist, alpha, steps, wh_paths, WalkMode::kernel, seed, 0.0, {}, 0};
    const WalkBatch batch = simulate_batch(config);
    OutputTarget target(out_path, out);
    target.stream() << "s,u,h_closed,h_mc,stderr\n";
    for (double s : parse_grid(s_grid)) {
      for (double u : parse_grid(u_grid)) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const auto& rec : batch.up_crossings) {
          const double v = rec.tau == 0 ? 0.0
                                        : std::pow(s, static_cast<double>(rec.tau)) *
                                              psi(alpha, u * rec.value);
          sum += v;
          sum_sq += v * v;
        }
        const double n = static_cast<double>(batch.up_crossings.size());
        const double mean = sum / n;
        const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
        target.stream() << fmt(s) << ',' << fmt(u) << ',' << fmt(wiener_hopf_H(law, s, u)) << ','
                        << fmt(mean) << ',' << fmt(std::sqrt(var / n)) << '\n';
      }
    }
    return 0;
  }

  if (verify_cmd->parsed()) {
    const auto reports = verify::run_suite(suite, seed, scale);
    OutputTarget target(out_path, out);
    target.stream() << verify::reports_to_json(reports) << '\n';
    std::size_t failed = 0;
    for (const auto& r : reports) failed += r.pass ? 0 : 1;
    if (failed > 0) {
      err << "verify: " << failed << " of " << reports.size() << " checks failed\n";
      return 1;
    }
    err << "verify: " << reports.size() << " checks passed\n";
    return 0;
  }

  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_impl(args, out, err);
  } catch (const SpecError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace kendall::cli
