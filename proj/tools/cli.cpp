#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lisdev/error.hpp"
#include "lisdev/io.hpp"
#include "lisdev/lis.hpp"
#include "lisdev/model.hpp"
#include "lisdev/montecarlo.hpp"
#include "lisdev/parallel.hpp"
#include "lisdev/rates.hpp"
#include "lisdev/rng.hpp"
#include "lisdev/tableaux.hpp"
#include "lisdev/variational.hpp"

namespace lisdev::cli {
namespace {

using json = nlohmann::ordered_json;

struct Run {
  std::string subcommand;
  std::vector<std::string> args;
  std::optional<std::uint64_t> seed;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  json extra = json::object();

  json manifest() const {
    json m;
    m["subcommand"] = subcommand;
    m["args"] = args;
    m["seed"] = seed ? json(*seed) : json(nullptr);
    m["version"] = LISDEV_VERSION;
    m["duration_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& [key, value] : extra.items()) m[key] = value;
    return m;
  }
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text;
}

void emit_json(const Run& run, json body, const std::string& path, std::ostream& out) {
  body["manifest"] = run.manifest();
  write_text(path, body.dump(2) + "\n", out);
}

// CSV carries no manifest inline: it goes to a sidecar next to --out, or to
// the error stream when the table goes to stdout.
void emit_csv(const Run& run, const std::string& csv, const std::string& path, std::ostream& out, std::ostream& err) {
  write_text(path, csv, out);
  if (path.empty()) {
    err << run.manifest().dump() << "\n";
  } else {
    write_text(path + ".manifest.json", run.manifest().dump(2) + "\n", out);
  }
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct DensityOptions {
  std::string file;
  std::string builtin = "uniform";
  std::size_t m = 64;
  std::vector<double> g;
  std::vector<double> h;
  double delta = 0.3;
  double depletion = 0.2;

  void attach(CLI::App* app, const std::string& prefix) {
    app->add_option(prefix.empty() ? "--density-file" : "--" + prefix + "file", file, "density JSON file");
    app->add_option("--" + prefix + "builtin", builtin, "uniform | product | strip_depleted")->capture_default_str();
    app->add_option("--" + prefix + "m", m, "grid resolution of a builtin density")->capture_default_str();
    app->add_option("--" + prefix + "marginal-x", g, "x marginal of the product family")->delimiter(',');
    app->add_option("--" + prefix + "marginal-y", h, "y marginal of the product family")->delimiter(',');
    app->add_option("--" + prefix + "strip-delta", delta, "strip width parameter")->capture_default_str();
    app->add_option("--" + prefix + "depletion", depletion, "strip depletion")->capture_default_str();
  }

  Density load() const {
    if (!file.empty()) return read_density_file(file);
    DensityParams params;
    params.m = m;
    params.g = g;
    params.h = h;
    params.delta = delta;
    params.depletion = depletion;
    return builtin_density(builtin, params);
  }
};

TailSide parse_side(const std::string& side) {
  if (side == "lower") return TailSide::lower;
  if (side == "upper") return TailSide::upper;
  throw ValidationError("side must be lower or upper");
}

const char* side_name(TailSide side) { return side == TailSide::lower ? "lower" : "upper"; }

ShapeCurve builtin_curve(const std::string& name) {
  if (name == "flat") return ShapeCurve({0.0, 1.0}, {1.0, 1.0});
  if (name == "linear") return ShapeCurve({0.0, 1.0}, {2.0, 0.0});
  throw ValidationError("unknown builtin curve '" + name + "' (flat | linear)");
}

json tail_json(const TailEstimate& e) {
  json j;
  j["p_hat"] = e.p_hat;
  j["log_p_hat"] = number(e.log_p_hat);
  j["std_error"] = e.std_error;
  j["trials"] = e.trials;
  j["effective_sample_size"] = e.effective_sample_size;
  j["side"] = side_name(e.side);
  j["threshold"] = e.threshold;
  j["n"] = e.n;
  return j;
}

json curve_json(const BlockCurve& curve) {
  json points = json::array();
  for (const auto& p : curve.points()) points.push_back({p[0], p[1]});
  return points;
}

// J for thresholds: 1 for the uniform density, else the solver's upper bracket.
double threshold_jbar(const Density& density, std::optional<double> given, const SolverConfig& config) {
  if (given) return *given;
  if (density.is_constant()) return 1.0;
  return solve_jbar(density, config).j_high;
}

std::string rate_name(const std::string& which) {
  if (which == "h0" || which == "u0" || which == "umu" || which == "b0") return which;
  throw ValidationError("--which must be h0, u0, umu or b0");
}

double rate_value(const std::string& which, double c, std::optional<double> jbar) {
  if (which == "h0") return h0(c).value;
  if (which == "u0") return u0(c).value;
  if (which == "b0") return b0(c);
  if (!jbar) throw ValidationError("umu needs --jbar");
  return u_mu(c, *jbar).value;
}

// Independent oracles used by `selftest`.
int run_selftest(std::ostream& out) {
  int failures = 0;
  const auto report = [&](const std::string& name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  bool dist_ok = true;
  for (int n = 1; n <= 8; ++n) dist_ok = dist_ok && exact_lmax_distribution(n).exact == brute_force_lmax_distribution(n).exact;
  report("exact law equals brute force for n <= 8", dist_ok);

  bool lis_ok = true;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const PointSample sample = sample_iid(uniform_density(4), 1 + trial % 40, derive_seed(7, trial));
    const auto& z = sample.points;
    std::vector<std::size_t> best(z.size(), 1);
    std::vector<std::size_t> order(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a].x < z[b].x; });
    std::size_t longest = 0;
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        if (z[order[b]].x < z[order[a]].x && z[order[b]].y < z[order[a]].y) {
          best[a] = std::max(best[a], best[b] + 1);
        }
      }
      longest = std::max(longest, best[a]);
    }
    lis_ok = lis_ok && lis_length(sample).length == longest;
  }
  report("patience sorting equals quadratic LIS on 200 samples", lis_ok);

  bool hook_ok = true;
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> columns;
    int remaining = 1 + static_cast<int>(gen() % 30);
    int cap = remaining;
    while (remaining > 0) {
      const int part = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(std::min(cap, remaining)));
      columns.push_back(part);
      remaining -= part;
      cap = part;
    }
    std::sort(columns.rbegin(), columns.rend());
    const YoungShape shape(columns);
    const int r = 1 + static_cast<int>(gen() % 10);
    const Rational direct(hook_data(append_first_column(shape, r)).hook_product, hook_data(shape).hook_product);
    hook_ok = hook_ok && direct == hook_ratio_exact(shape, r);
  }
  report("hook ratio formula equals direct recomputation", hook_ok);

  std::uint64_t total = 0;
  for (const YoungShape& s : enumerate_shapes(12)) {
    const BigInt d = hook_data(s).dimension;
    total += static_cast<std::uint64_t>(d * d);
  }
  report("sum of squared dimensions equals 12!", total == 479001600ULL);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Longest increasing subsequences of random point samples: exact laws, rates, solvers"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "worker threads (default LISDEV_THREADS or all cores)");

  std::string out_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  DensityOptions density_opts;
  DensityOptions tilt_opts;
  SolverConfig solver;

  const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_path, "output file (default stdout)"); };
  const auto add_seed = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--seed", seed, "random seed");
    if (required) opt->required();
  };
  const auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--delta", solver.delta, "column width")->capture_default_str();
    sub->add_option("--delta-y", solver.delta_y, "row height")->capture_default_str();
  };

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw an i.i.d. or Poissonized sample, CSV x,y");
  std::size_t sample_n = 0;
  std::optional<double> sample_poisson;
  density_opts.attach(sample_cmd, "");
  sample_cmd->add_option("--n", sample_n, "number of points");
  sample_cmd->add_option("--poisson", sample_poisson, "Poisson intensity instead of --n");
  add_seed(sample_cmd, true);
  add_out(sample_cmd);

  // lis
  auto* lis_cmd = app.add_subcommand("lis", "longest increasing chain of a CSV sample");
  std::string lis_in;
  lis_cmd->add_option("--in", lis_in, "sample CSV")->required();
  add_out(lis_cmd);

  // exact-dist
  auto* exact_cmd = app.add_subcommand("exact-dist", "exact law of L_max(n) from shape enumeration");
  int exact_n = 0;
  std::optional<double> exact_poisson;
  double truncation = 1e-7;
  int cap = kDefaultShapeCap;
  exact_cmd->add_option("--n", exact_n, "permutation size");
  exact_cmd->add_option("--poisson", exact_poisson, "Poissonized law with this intensity");
  exact_cmd->add_option("--truncation", truncation, "Poisson tail mass left out")->capture_default_str();
  exact_cmd->add_option("--cap", cap, "largest n enumerated")->capture_default_str();
  exact_cmd->add_option("--format", format, "csv | json")->capture_default_str();
  add_out(exact_cmd);

  // rate
  auto* rate_cmd = app.add_subcommand("rate", "closed-form rate function value");
  std::string which;
  double rate_c = 0.0;
  std::optional<double> jbar;
  rate_cmd->add_option("--which", which, "h0 | u0 | umu | b0")->required();
  rate_cmd->add_option("--c", rate_c, "argument")->required();
  rate_cmd->add_option("--jbar", jbar, "J for umu");
  add_out(rate_cmd);

  // rate-table
  auto* table_cmd = app.add_subcommand("rate-table", "CSV grid of a rate function");
  double c_min = 0.0;
  double c_max = 1.0;
  std::size_t points = 101;
  table_cmd->add_option("--which", which, "h0 | u0 | umu | b0")->required();
  table_cmd->add_option("--c-min", c_min)->capture_default_str();
  table_cmd->add_option("--c-max", c_max)->capture_default_str();
  table_cmd->add_option("--points", points)->capture_default_str();
  table_cmd->add_option("--jbar", jbar, "J for umu");
  add_out(table_cmd);

  // jbar
  auto* jbar_cmd = app.add_subcommand("jbar", "bracket J(mu) by block-curve dynamic programs");
  std::optional<double> near_tol;
  density_opts.attach(jbar_cmd, "");
  add_solver(jbar_cmd);
  jbar_cmd->add_option("--near-tol", near_tol, "also list curves within this relative tolerance");
  add_out(jbar_cmd);

  // upper-rate
  auto* upper_cmd = app.add_subcommand("upper-rate", "discrete fluctuation-profile problem");
  std::vector<double> rho;
  double upper_c = 0.0;
  upper_cmd->add_option("--rho", rho, "block masses")->delimiter(',')->required();
  upper_cmd->add_option("--c", upper_c, "excess speed")->required();
  add_seed(upper_cmd, false);
  add_out(upper_cmd);

  // mc-tail
  auto* tail_cmd = app.add_subcommand("mc-tail", "Monte Carlo tail probability, optionally tilted");
  std::size_t tail_n = 0;
  std::string side = "lower";
  double tail_c = 0.0;
  std::size_t trials = 1000;
  std::optional<double> threshold;
  density_opts.attach(tail_cmd, "");
  tilt_opts.builtin.clear();
  tilt_opts.attach(tail_cmd, "tilt-");
  tail_cmd->add_option("--n", tail_n, "sample size")->required();
  tail_cmd->add_option("--side", side, "lower | upper")->capture_default_str();
  tail_cmd->add_option("--c", tail_c, "deviation; threshold is 2J + c");
  tail_cmd->add_option("--threshold", threshold, "threshold in units of sqrt(n), overrides --c");
  tail_cmd->add_option("--jbar", jbar, "J for the threshold (default: 1 if uniform, else solver upper bracket)");
  tail_cmd->add_option("--trials", trials)->capture_default_str();
  add_seed(tail_cmd, true);
  add_solver(tail_cmd);
  add_out(tail_cmd);

  // rate-curve
  auto* curve_cmd = app.add_subcommand("rate-curve", "finite-n rates beside their limit, CSV");
  std::vector<std::size_t> n_list;
  std::string mode = "exact";
  double curve_c = 0.0;
  density_opts.attach(curve_cmd, "");
  curve_cmd->add_option("--side", side)->capture_default_str();
  curve_cmd->add_option("--c", curve_c)->required();
  curve_cmd->add_option("--n-list", n_list)->delimiter(',')->required();
  curve_cmd->add_option("--mode", mode, "exact | mc")->capture_default_str();
  curve_cmd->add_option("--trials", trials)->capture_default_str();
  curve_cmd->add_option("--jbar", jbar);
  add_seed(curve_cmd, false);
  add_solver(curve_cmd);
  add_out(curve_cmd);

  // concentration
  auto* conc_cmd = app.add_subcommand("concentration", "conditional witness distances to optimal curves, CSV");
  std::size_t conc_n = 0;
  double conc_c = 0.2;
  std::size_t accepted = 200;
  std::size_t max_attempts = 50'000'000;
  double conc_tol = 0.0;
  density_opts.attach(conc_cmd, "");
  conc_cmd->add_option("--n", conc_n)->required();
  conc_cmd->add_option("--c", conc_c)->capture_default_str();
  conc_cmd->add_option("--accepted", accepted)->capture_default_str();
  conc_cmd->add_option("--max-attempts", max_attempts)->capture_default_str();
  conc_cmd->add_option("--near-tol", conc_tol, "tolerance for reference curves")->capture_default_str();
  add_seed(conc_cmd, true);
  add_solver(conc_cmd);
  add_out(conc_cmd);

  // shape-from-curve
  auto* shape_cmd = app.add_subcommand("shape-from-curve", "Young shape with columns floor(f(i/sqrt n) sqrt n)");
  std::string curve_file;
  std::string curve_builtin = "linear";
  int shape_n = 0;
  shape_cmd->add_option("--curve-file", curve_file, "curve JSON {\"x\":[...],\"f\":[...]}");
  shape_cmd->add_option("--curve", curve_builtin, "flat | linear")->capture_default_str();
  shape_cmd->add_option("--n", shape_n)->required();
  add_out(shape_cmd);

  // hook
  auto* hook_cmd = app.add_subcommand("hook", "hook data of a shape, or the hook integral of a curve");
  std::string shape_text;
  std::string scheme = "adaptive";
  double tol = 1e-6;
  hook_cmd->add_option("--shape", shape_text, "JSON array of column lengths");
  hook_cmd->add_option("--curve-file", curve_file);
  hook_cmd->add_option("--curve", curve_builtin, "flat | linear")->capture_default_str();
  hook_cmd->add_option("--scheme", scheme, "adaptive | boundary")->capture_default_str();
  hook_cmd->add_option("--tol", tol)->capture_default_str();
  add_out(hook_cmd);

  auto* self_cmd = app.add_subcommand("selftest", "brute-force oracle checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  if (threads > 0) set_thread_count(threads);

  CLI::App* chosen = app.get_subcommands().front();
  Run run;
  run.subcommand = chosen->get_name();
  run.args = args;

  try {
    if (chosen == sample_cmd) {
      run.seed = seed;
      const Density density = density_opts.load();
      if (sample_poisson && sample_n > 0) throw ValidationError("give --n or --poisson, not both");
      if (!sample_poisson && sample_n == 0) throw ValidationError("sample needs --n or --poisson");
      const PointSample sample =
          sample_poisson ? lisdev::sample_poisson(density, *sample_poisson, *seed) : sample_iid(density, sample_n, *seed);
      std::ostringstream csv;
      write_sample_csv(csv, sample);
      emit_csv(run, csv.str(), out_path, out, err);
    } else if (chosen == lis_cmd) {
      const PointSample sample = read_sample_file(lis_in);
      const LisResult result = lis_length(sample);
      json body;
      body["length"] = result.length;
      body["n"] = sample.n();
      json witness = json::array();
      for (const std::size_t i : result.witness) witness.push_back({sample.points[i].x, sample.points[i].y});
      body["witness"] = witness;
      emit_json(run, body, out_path, out);
    } else if (chosen == exact_cmd) {
      if (format != "csv" && format != "json") throw ValidationError("--format must be csv or json");
      Pmf pmf;
      std::size_t first_k = 0;
      if (exact_poisson) {
        pmf = poissonized_lmax_distribution(*exact_poisson, truncation, cap);
        run.extra["truncation_residual"] = pmf.truncation_residual;
      } else {
        if (exact_n < 1) throw ValidationError("exact-dist needs --n >= 1 or --poisson");
        pmf = exact_lmax_distribution(exact_n, cap);
        first_k = 1;
      }
      double cumulative = 0.0;
      for (std::size_t k = 0; k < first_k; ++k) cumulative += pmf.probability[k];
      if (format == "csv") {
        std::string csv = "k,probability,cumulative\n";
        for (std::size_t k = first_k; k < pmf.probability.size(); ++k) {
          cumulative += pmf.probability[k];
          csv += std::to_string(k) + "," + format_double(pmf.probability[k]) + "," + format_double(cumulative) + "\n";
        }
        emit_csv(run, csv, out_path, out, err);
      } else {
        json rows = json::array();
        for (std::size_t k = first_k; k < pmf.probability.size(); ++k) {
          cumulative += pmf.probability[k];
          json row;
          row["k"] = k;
          row["probability"] = pmf.probability[k];
          row["cumulative"] = cumulative;
          if (pmf.mode == Arithmetic::exact_rational) row["exact"] = pmf.exact[k].str();
          rows.push_back(row);
        }
        json body;
        body["arithmetic"] = pmf.mode == Arithmetic::exact_rational ? "exact_rational" : "log_domain";
        body["pmf"] = rows;
        if (exact_poisson) body["truncation_residual"] = pmf.truncation_residual;
        emit_json(run, body, out_path, out);
      }
    } else if (chosen == rate_cmd) {
      const std::string name = rate_name(which);
      json body;
      body["which"] = name;
      body["c"] = rate_c;
      if (jbar) body["jbar"] = *jbar;
      body["value"] = rate_value(name, rate_c, jbar);
      emit_json(run, body, out_path, out);
    } else if (chosen == table_cmd) {
      const std::string name = rate_name(which);
      if (points < 2 || !(c_max > c_min)) throw ValidationError("need --points >= 2 and --c-max > --c-min");
      std::string csv = "c,value\n";
      for (std::size_t k = 0; k < points; ++k) {
        const double c = c_min + (c_max - c_min) * static_cast<double>(k) / static_cast<double>(points - 1);
        csv += format_double(c) + "," + format_double(rate_value(name, c, jbar)) + "\n";
      }
      emit_csv(run, csv, out_path, out, err);
    } else if (chosen == jbar_cmd) {
      const Density density = density_opts.load();
      const VariationalResult result = solve_jbar(density, solver);
      json body;
      body["j_low"] = result.j_low;
      body["j_high"] = result.j_high;
      body["delta"] = result.delta;
      body["delta_y"] = result.delta_y;
      body["curve"] = curve_json(result.best_curve);
      if (near_tol) {
        json curves = json::array();
        for (const BlockCurve& c : near_optimal_curves(density, solver, *near_tol)) curves.push_back(curve_json(c));
        body["near_optimal"] = curves;
      }
      emit_json(run, body, out_path, out);
    } else if (chosen == upper_cmd) {
      run.seed = seed.value_or(0);
      const UpperRateResult result = discrete_upper_rate(rho, upper_c, seed.value_or(0));
      json body;
      body["value"] = result.value;
      body["profile"] = result.profile.t;
      body["numeric_value"] = result.numeric_value;
      body["numeric_profile"] = result.numeric_profile;
      emit_json(run, body, out_path, out);
    } else if (chosen == tail_cmd) {
      run.seed = seed;
      const Density density = density_opts.load();
      const TailSide tail_side = parse_side(side);
      const double t = threshold ? *threshold : 2.0 * threshold_jbar(density, jbar, solver) + tail_c;
      const bool tilted = !tilt_opts.file.empty() || !tilt_opts.builtin.empty();
      const TailEstimate estimate =
          tilted ? estimate_tail_tilted(density, tilt_opts.load(), tail_n, t, tail_side, trials, *seed)
                 : estimate_tail(density, tail_n, t, tail_side, trials, *seed);
      json body = tail_json(estimate);
      body["tilted"] = tilted;
      emit_json(run, body, out_path, out);
    } else if (chosen == curve_cmd) {
      const Density density = density_opts.load();
      RateCurveConfig config;
      if (mode == "exact") {
        config.mode = RateMode::exact;
      } else if (mode == "mc") {
        config.mode = RateMode::monte_carlo;
        if (!seed) throw ValidationError("--seed is required with --mode mc");
        run.seed = seed;
        config.seed = *seed;
      } else {
        throw ValidationError("--mode must be exact or mc");
      }
      config.trials = trials;
      config.jbar = threshold_jbar(density, jbar, solver);
      const auto rows = empirical_rate_curve(density, parse_side(side), curve_c, n_list, config);
      std::string csv = "n,probability,empirical_rate,analytic_limit\n";
      bool warned = false;
      for (const RatePoint& p : rows) {
        csv += std::to_string(p.n) + "," + format_double(p.probability) + "," +
               (p.infinite ? std::string("inf") : format_double(p.rate)) + "," + format_double(p.analytic_limit) + "\n";
        warned = warned || p.infinite;
      }
      if (warned) err << "warning: a tail probability was estimated as 0; increase --trials or use a tilt\n";
      emit_csv(run, csv, out_path, out, err);
    } else if (chosen == conc_cmd) {
      run.seed = seed;
      const Density density = density_opts.load();
      const VariationalResult solved = solve_jbar(density, solver);
      const std::vector<BlockCurve> reference = near_optimal_curves(density, solver, conc_tol);
      ConcentrationConfig config;
      config.accepted_target = accepted;
      config.max_attempts = max_attempts;
      config.seed = *seed;
      config.jbar = solved.j_high;
      const ConcentrationSummary summary = concentration_experiment(density, conc_n, conc_c, reference, config);
      run.extra["jbar"] = solved.j_high;
      run.extra["threshold_length"] = summary.threshold_length;
      run.extra["attempts"] = summary.attempts;
      run.extra["accepted"] = summary.accepted;
      run.extra["acceptance_rate"] = summary.acceptance_rate;
      run.extra["predicted_acceptance"] = summary.predicted_acceptance;
      run.extra["reference_curves"] = reference.size();
      std::string csv = "quantile,distance\n";
      for (const auto& [level, distance] : summary.quantiles) {
        csv += format_double(level) + "," + format_double(distance) + "\n";
      }
      emit_csv(run, csv, out_path, out, err);
    } else if (chosen == shape_cmd) {
      const ShapeCurve curve = curve_file.empty() ? builtin_curve(curve_builtin) : read_curve_file(curve_file);
      const YoungShape shape = shape_from_curve(curve, shape_n);
      json body;
      body["n"] = shape_n;
      body["size"] = shape.size();
      body["columns"] = shape.columns();
      emit_json(run, body, out_path, out);
    } else if (chosen == hook_cmd) {
      json body;
      if (!shape_text.empty()) {
        const YoungShape shape = shape_from_json(shape_text);
        const HookData data = hook_data(shape);
        body["columns"] = shape.columns();
        body["hooks"] = data.hooks;
        body["log_hook_product"] = data.log_hook_product;
        body["hook_product"] = data.hook_product.str();
        body["dimension"] = data.dimension.str();
      } else {
        if (scheme != "adaptive" && scheme != "boundary") throw ValidationError("--scheme must be adaptive or boundary");
        const ShapeCurve curve = curve_file.empty() ? builtin_curve(curve_builtin) : read_curve_file(curve_file);
        const auto s = scheme == "adaptive" ? QuadratureScheme::adaptive_tensor : QuadratureScheme::boundary_layer;
        body["scheme"] = scheme;
        body["value"] = hook_integral(curve, s, tol);
      }
      emit_json(run, body, out_path, out);
    } else if (chosen == self_cmd) {
      return run_selftest(out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lisdev::cli
