// Command-line driver for the multi-district urn simulator.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polyaurn/analytic.hpp"
#include "polyaurn/dataset_io.hpp"
#include "polyaurn/election.hpp"
#include "polyaurn/experiment.hpp"
#include "polyaurn/number_format.hpp"
#include "polyaurn/plots.hpp"
#include "polyaurn/scenarios.hpp"
#include "polyaurn/swing.hpp"
#include "polyaurn/validate.hpp"

namespace {

using namespace polyaurn;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

/// "count:a,b,c" -> block of `count` districts with colour counts a, b, c.
AllocationBlock parse_block(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("block '" + text + "' must look like COUNT:A,B,...");
  AllocationBlock block;
  block.district_count = std::stoul(text.substr(0, colon));
  std::stringstream rest(text.substr(colon + 1));
  std::string part;
  while (std::getline(rest, part, ',')) block.counts_per_colour.push_back(std::stoull(part));
  return block;
}

TieRule parse_tie_rule_flag(const std::string& name) {
  if (name == "random") return TieRule::uniform_random;
  if (name == "lowest") return TieRule::lowest_index;
  throw std::invalid_argument("tie rule must be 'random' or 'lowest'");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

struct SimulateArgs {
  std::size_t districts = 100;
  std::size_t colours = 2;
  double p = 0.0;
  Count k = 1;
  std::vector<std::string> blocks;
  Count target = kDeskTargetBalls;
  std::uint64_t seed = 1;
  std::string tie_rule = "random";
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  SimulationConfig cfg;
  cfg.num_districts = a.districts;
  cfg.num_colours = a.colours;
  cfg.imitation_prob = a.p;
  cfg.reinforcement = a.k;
  if (a.blocks.empty()) {
    cfg.initial_allocation = InitialAllocation::uniform(a.districts, std::vector<Count>(a.colours, 1));
  } else {
    for (const auto& b : a.blocks) cfg.initial_allocation.blocks.push_back(parse_block(b));
  }
  cfg.target_total_balls = a.target;
  cfg.seed = a.seed;

  UrnState state = init_state(cfg);
  Rng rng(cfg.seed);
  run_until(state, cfg.target_total_balls, rng);
  const auto result = tally(state, parse_tie_rule_flag(a.tie_rule), rng);

  std::ostringstream csv;
  write_state_csv(csv, state);
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(a.out, csv.str());
  }
  std::ostream& info = a.out.empty() ? std::cerr : std::cout;
  info << "steps " << state.step_count() << ", balls " << state.grand_total() << '\n';
  for (std::size_t c = 0; c < cfg.num_colours; ++c) {
    info << "party " << c + 1 << ": popular share " << format_number(result.popular_shares[c]) << ", seats "
         << result.seats[c] << '\n';
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string scenario;
  std::string config_file;
  double p = 0.0;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  Count target = kDeskTargetBalls;
  std::size_t districts = 0;
  std::string out;
  unsigned threads = 0;
  bool plots = false;
  double window = 1.0;
  std::string tie_rule = "random";
};

int run_experiment_cmd(const ExperimentArgs& a, const CLI::App& cmd) {
  auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
  ExperimentSpec spec;
  if (!a.config_file.empty()) {
    nlohmann::json doc = read_json_file(a.config_file);
    nlohmann::json& fields = doc.contains("spec") ? doc["spec"] : doc;
    if (!a.scenario.empty()) fields["scenario"] = a.scenario;
    if (given("--p")) fields["p"] = a.p;
    if (given("--reps")) fields["replicates"] = a.reps;
    if (given("--seed")) fields["seed"] = a.seed;
    if (given("--target")) fields["target_total_balls"] = a.target;
    if (given("--districts")) fields["num_districts"] = a.districts;
    if (given("--out")) fields["output_dir"] = a.out;
    if (given("--window")) fields["slope_window"] = a.window;
    if (given("--threads")) fields["threads"] = a.threads;
    if (given("--tie-rule")) {
      fields["tie_rule"] = parse_tie_rule_flag(a.tie_rule) == TieRule::lowest_index ? "lowest_index" : "uniform_random";
    }
    if (a.plots) fields["outputs"]["plots"] = true;
    spec = experiment_spec_from_json(fields);
  } else {
    if (a.scenario.empty()) throw std::invalid_argument("experiment needs a scenario name or --config");
    spec = make_experiment_spec(a.scenario, a.p, a.reps, a.seed, a.target, a.districts);
    spec.output_dir = a.out;
    spec.slope_window = a.window;
    spec.replicate_options.threads = a.threads;
    spec.replicate_options.tie_rule = parse_tie_rule_flag(a.tie_rule);
    spec.outputs.plots = a.plots;
  }
  const auto outcome = run_experiment(spec);
  std::cout << outcome.summary.dump(2) << '\n';
  return kExitOk;
}

struct SwingArgs {
  SwingSpec spec;
  std::string out;
};

int run_swing_cmd(const SwingArgs& a) {
  const auto outcome = run_swing(a.spec);
  nlohmann::json summary = {{"replicates", outcome.records.size()},
                            {"imitation_prob", a.spec.imitation_prob},
                            {"slope", outcome.fit.slope},
                            {"intercept", outcome.fit.intercept},
                            {"residual_rms", outcome.fit.residual_rms}};
  if (!a.out.empty()) {
    std::ostringstream csv;
    write_swing_csv(csv, outcome.records);
    const std::filesystem::path dir(a.out);
    write_text_file(dir / "swing.csv", csv.str());
    write_text_file(dir / "swing_summary.json", summary.dump(2) + "\n");
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& r : outcome.records) {
      x.push_back(r.original_district_share);
      y.push_back(r.local_swing - r.national_swing);
    }
    ScatterOverlay overlay;
    overlay.line = LineOverlay{outcome.fit.slope, outcome.fit.intercept};
    write_text_file(dir / "swing.svg",
                    render_scatter_svg(x, y, "Local minus national swing", "original district share",
                                       "local - national swing", overlay));
  }
  std::cout << summary.dump(2) << '\n';
  return kExitOk;
}

int run_cubefit(const std::string& path, double window) {
  const auto data = load_dataset_csv(path);
  nlohmann::json out = {{"replicates", data.size()}};
  const auto fit = central_slope_fit(data, window);
  out["central_slope"] = {{"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"residual_rms", fit.residual_rms},
                          {"points_used", fit.points_used}};
  try {
    out["cube_exponent"] = cube_exponent_fit(data);
  } catch (const std::invalid_argument&) {
    out["cube_exponent"] = nullptr;
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_plot(const std::string& path, const std::string& kind, const std::string& out, const PlotOptions& opts) {
  const auto parsed = parse_plot_kind(kind);
  const auto data = load_dataset_csv(path);
  emit_plot(data, parsed, opts, out);
  return kExitOk;
}

struct CurveArgs {
  std::string kind = "cube";
  double k = 3.0;
  unsigned a = 1;
  unsigned b = 1;
  unsigned n = 3;
  std::size_t points = 1001;
  std::string out;
};

int run_curve(const CurveArgs& a) {
  std::optional<AnalyticCurve> curve;
  if (a.kind == "cube") curve.emplace(CubeCurve{a.k});
  else if (a.kind == "uniform") curve.emplace(UniformCdf{});
  else if (a.kind == "beta") curve.emplace(BetaCdf{a.a, a.b});
  else if (a.kind == "seatvote2") curve.emplace(SeatVoteN2{});
  else if (a.kind == "seatvote") curve.emplace(SeatVoteN{a.n});
  else throw std::invalid_argument("unknown curve kind '" + a.kind + "'");
  std::ostringstream csv;
  write_curve_csv(csv, *curve, a.points);
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(a.out, csv.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-district Polya urn election simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation from an explicit config and print the final state");
  simulate->add_option("--districts,-N", sim.districts, "Number of districts")->check(CLI::PositiveNumber);
  simulate->add_option("--colours,-m", sim.colours, "Number of parties")->check(CLI::PositiveNumber);
  simulate->add_option("--p", sim.p, "Imitation probability")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--K", sim.k, "Balls added per step")->check(CLI::PositiveNumber);
  simulate->add_option("--block", sim.blocks, "Allocation block COUNT:A,B,... (repeatable; default 1 of each)");
  simulate->add_option("--target", sim.target, "Stop once the total ball count reaches this");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--tie-rule", sim.tie_rule, "random or lowest");
  simulate->add_option("--out", sim.out, "State CSV path (default stdout)");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "Replicate a catalog scenario");
  experiment->add_option("scenario", exp.scenario, "Scenario name (see 'scenarios')");
  experiment->add_option("--config", exp.config_file, "JSON experiment config or manifest; flags override it");
  experiment->add_option("--p", exp.p, "Imitation probability")->check(CLI::Range(0.0, 1.0));
  experiment->add_option("--reps", exp.reps, "Replicate count")->check(CLI::PositiveNumber);
  experiment->add_option("--seed", exp.seed, "Master seed");
  experiment->add_option("--target", exp.target, "Total balls per run");
  experiment->add_option("--districts", exp.districts, "Override N for resizable scenarios");
  experiment->add_option("--out", exp.out, "Output directory");
  experiment->add_option("--threads", exp.threads, "Worker threads (0 = all cores)");
  experiment->add_option("--window", exp.window, "Half-width of the central slope window");
  experiment->add_option("--tie-rule", exp.tie_rule, "random or lowest");
  experiment->add_flag("--plots", exp.plots, "Also write SVG figures");

  SwingArgs sw;
  auto* swing = app.add_subcommand("swing", "Grow, rescale and regrow to measure inter-election swing");
  swing->add_option("--p", sw.spec.imitation_prob, "Imitation probability")->check(CLI::Range(0.0, 1.0));
  swing->add_option("--reps", sw.spec.replicates, "Replicate count");
  swing->add_option("--seed", sw.spec.seed, "Master seed");
  swing->add_option("--districts", sw.spec.num_districts, "Number of districts");
  swing->add_option("--grow", sw.spec.grow_target, "Population before rescaling");
  swing->add_option("--rescale", sw.spec.rescale_total, "Population after rescaling");
  swing->add_option("--regrow", sw.spec.regrow_target, "Population after regrowing");
  swing->add_option("--track", sw.spec.tracked_district, "Tracked district (0-based)");
  swing->add_option("--threads", sw.spec.threads, "Worker threads (0 = all cores)");
  swing->add_option("--out", sw.out, "Output directory for swing.csv, swing.svg and the summary");

  std::string fit_path;
  double fit_window = 1.0;
  auto* cubefit = app.add_subcommand("cubefit", "Fit the central slope and cube-law exponent to a dataset CSV");
  cubefit->add_option("dataset", fit_path, "Replicate CSV")->required();
  cubefit->add_option("--window", fit_window, "Half-width of the central slope window");

  ValidationOptions vopts;
  auto* validate = app.add_subcommand("validate", "Run the oracle battery");
  validate->add_flag("--corrupt-step", vopts.corrupt_step, "Negative control: distort the colour draw");
  validate->add_option("--samples", vopts.oracle_samples, "Monte Carlo samples per exact-law comparison");
  validate->add_option("--reps", vopts.replicates, "Replicates for the limit-law checks");
  validate->add_option("--threads", vopts.threads, "Worker threads (0 = all cores)");

  std::string plot_path;
  std::string plot_kind;
  std::string plot_out;
  PlotOptions popts;
  double cube_k = 0.0;
  auto* plot = app.add_subcommand("plot", "Render an SVG figure from a dataset CSV");
  plot->add_option("dataset", plot_path, "Replicate CSV")->required();
  plot->add_option("--kind", plot_kind, "seats, popular, district, northsouth or seatvote")->required();
  plot->add_option("--out", plot_out, "SVG path")->required();
  plot->add_option("--bins", popts.bins, "Histogram bins")->check(CLI::PositiveNumber);
  plot->add_option("--cube-k", cube_k, "Overlay the cube curve with this exponent (seatvote)");
  plot->add_flag("--fit-line", popts.fit_line, "Overlay the OLS line (seatvote)");
  plot->add_option("--title", popts.title, "Figure title");

  CurveArgs curve_args;
  auto* curve = app.add_subcommand("curve", "Tabulate an analytic curve as x,y CSV");
  curve->add_option("--kind", curve_args.kind, "cube, uniform, beta, seatvote2 or seatvote");
  curve->add_option("--k", curve_args.k, "Cube-law exponent");
  curve->add_option("--a", curve_args.a, "Beta parameter a");
  curve->add_option("--b", curve_args.b, "Beta parameter b");
  curve->add_option("--n", curve_args.n, "Districts for the numeric seat-vote curve");
  curve->add_option("--points", curve_args.points, "Grid points");
  curve->add_option("--out", curve_args.out, "CSV path (default stdout)");

  auto* scenarios = app.add_subcommand("scenarios", "List the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*experiment) return run_experiment_cmd(exp, *experiment);
    if (*swing) return run_swing_cmd(sw);
    if (*cubefit) return run_cubefit(fit_path, fit_window);
    if (*validate) {
      const auto report = run_validation(vopts);
      report.print(std::cout);
      return report.all_passed() ? kExitOk : kExitValidation;
    }
    if (*plot) {
      if (plot->count("--cube-k") > 0) popts.cube_k = cube_k;
      return run_plot(plot_path, plot_kind, plot_out, popts);
    }
    if (*curve) return run_curve(curve_args);
    if (*scenarios) {
      for (const auto& s : scenario_catalog()) std::cout << s.name << "\t" << s.description << '\n';
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
