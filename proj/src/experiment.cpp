#include "polyaurn/experiment.hpp"

#include <cmath>
#include <sstream>

#include "polyaurn/dataset_io.hpp"
#include "polyaurn/parallel.hpp"
#include "polyaurn/plots.hpp"
#include "polyaurn/scenarios.hpp"

#ifndef POLYAURN_VERSION
#define POLYAURN_VERSION "0.0.0"
#endif

namespace polyaurn {

std::string tool_version() { return POLYAURN_VERSION; }

ReplicateRow simulate_replicate(const SimulationConfig& config, std::uint64_t replicate_id,
                                const ReplicateOptions& options) {
  const std::uint64_t seed = derive_stream_seed(config.seed, replicate_id);
  Rng rng(seed);
  UrnState state = init_state(config);
  run_until(state, config.target_total_balls, rng);
  const ElectionResult result = tally(state, options.tie_rule, rng);
  const auto regions = regional_shares(state, RegionalSplit::north_south(state.num_districts()));

  ReplicateRow row;
  row.replicate_id = replicate_id;
  row.seed = seed;
  row.popular_shares = result.popular_shares;
  row.seats.assign(result.seats.begin(), result.seats.end());
  row.district1_share = result.district_share(0, 0);
  row.north_share = regions[0][0];
  row.south_share = regions[1][0];
  if (options.keep_district_shares) {
    row.district_shares.resize(state.num_districts());
    for (std::size_t u = 0; u < state.num_districts(); ++u) row.district_shares[u] = result.district_share(u, 0);
  }
  return row;
}

ReplicateDataset simulate_replicates(const SimulationConfig& config, std::size_t replicates,
                                     const ReplicateOptions& options) {
  config.validate();
  if (config.num_districts < 2) {
    throw std::invalid_argument("replicate datasets need at least two districts (north/south split)");
  }
  ReplicateDataset data;
  data.num_districts = config.num_districts;
  data.num_colours = config.num_colours;
  data.rows.resize(replicates);
  parallel_for(replicates, options.threads,
               [&](std::size_t r) { data.rows[r] = simulate_replicate(config, r, options); });
  return data;
}

void ExperimentSpec::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicate count must be >= 1");
  if (!(slope_window > 0.0)) throw std::invalid_argument("slope window must be positive");
  config.validate();
}

ExperimentSpec make_experiment_spec(const std::string& scenario, double imitation_prob,
                                    std::size_t replicates, std::uint64_t seed,
                                    Count target_total_balls, std::size_t num_districts) {
  const Scenario sc = find_scenario(scenario, num_districts == 0 ? kBaselineDistricts : num_districts);
  ExperimentSpec spec;
  spec.scenario = sc.name;
  spec.config = make_config(sc, imitation_prob, target_total_balls, seed);
  spec.replicates = replicates;
  spec.validate();
  return spec;
}

namespace {

std::string tie_rule_name(TieRule rule) {
  return rule == TieRule::uniform_random ? "uniform_random" : "lowest_index";
}

TieRule parse_tie_rule(const std::string& name) {
  if (name == "uniform_random" || name == "random") return TieRule::uniform_random;
  if (name == "lowest_index" || name == "lowest") return TieRule::lowest_index;
  throw std::invalid_argument("unknown tie rule '" + name + "'");
}

nlohmann::json config_to_json(const SimulationConfig& c) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : c.initial_allocation.blocks) {
    blocks.push_back({{"district_count", b.district_count}, {"counts_per_colour", b.counts_per_colour}});
  }
  return {{"num_districts", c.num_districts},
          {"num_colours", c.num_colours},
          {"imitation_prob", c.imitation_prob},
          {"reinforcement", c.reinforcement},
          {"initial_allocation", blocks},
          {"target_total_balls", c.target_total_balls},
          {"seed", c.seed}};
}

nlohmann::json fit_to_json(const SlopeFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"residual_rms", f.residual_rms},
          {"points_used", f.points_used}};
}

}  // namespace

ExperimentSpec experiment_spec_from_json(const nlohmann::json& input) {
  if (!input.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  // A manifest carries the spec under "spec"; accept it directly so runs can be replayed.
  const auto& doc = input.contains("spec") ? input.at("spec") : input;
  if (!doc.contains("scenario")) throw std::invalid_argument("experiment config needs a 'scenario'");
  ExperimentSpec spec = make_experiment_spec(
      doc.at("scenario").get<std::string>(), doc.value("p", 0.0), doc.value("replicates", std::size_t{1000}),
      doc.value("seed", std::uint64_t{1}), doc.value("target_total_balls", kDeskTargetBalls),
      doc.value("num_districts", std::size_t{0}));
  spec.output_dir = doc.value("output_dir", std::string{});
  spec.slope_window = doc.value("slope_window", 1.0);
  spec.replicate_options.tie_rule = parse_tie_rule(doc.value("tie_rule", std::string{"uniform_random"}));
  spec.replicate_options.threads = doc.value("threads", 0u);
  if (doc.contains("outputs")) {
    const auto& o = doc.at("outputs");
    spec.outputs.dataset = o.value("dataset", spec.outputs.dataset);
    spec.outputs.histograms = o.value("histograms", spec.outputs.histograms);
    spec.outputs.correlations = o.value("correlations", spec.outputs.correlations);
    spec.outputs.slope_fits = o.value("slope_fits", spec.outputs.slope_fits);
    spec.outputs.plots = o.value("plots", spec.outputs.plots);
  }
  spec.validate();
  return spec;
}

nlohmann::json experiment_spec_to_json(const ExperimentSpec& spec) {
  return {{"scenario", spec.scenario},
          {"p", spec.config.imitation_prob},
          {"replicates", spec.replicates},
          {"seed", spec.config.seed},
          {"target_total_balls", spec.config.target_total_balls},
          {"num_districts", spec.config.num_districts},
          {"output_dir", spec.output_dir.generic_string()},
          {"slope_window", spec.slope_window},
          {"tie_rule", tie_rule_name(spec.replicate_options.tie_rule)},
          {"outputs",
           {{"dataset", spec.outputs.dataset},
            {"histograms", spec.outputs.histograms},
            {"correlations", spec.outputs.correlations},
            {"slope_fits", spec.outputs.slope_fits},
            {"plots", spec.outputs.plots}}}};
}

nlohmann::json summarize(const ReplicateDataset& data, const ExperimentSpec& spec) {
  nlohmann::json s;
  s["replicates"] = data.size();
  const auto seats = data.seats_party1();
  s["seats_p1"] = {{"mean", mean(seats)}, {"variance", data.size() > 1 ? sample_variance(seats) : 0.0}};
  const auto popular = data.popular_share_party1();
  s["popular_share_p1"] = {{"mean", mean(popular)},
                           {"variance", data.size() > 1 ? sample_variance(popular) : 0.0}};

  if (spec.outputs.histograms) {
    std::vector<double> seat_edges(data.num_districts + 2);
    for (std::size_t i = 0; i < seat_edges.size(); ++i) seat_edges[i] = static_cast<double>(i) - 0.5;
    const auto unit = uniform_edges(0.0, 1.0, 20);
    s["histograms"] = {{"seats_p1", histogram(seats, seat_edges)},
                       {"popular_share_p1", histogram(popular, unit)},
                       {"district1_share_p1", histogram(data.district1_share(), unit)},
                       {"share_bin_edges", unit}};
  }
  if (spec.outputs.correlations) {
    nlohmann::json r = nullptr;
    if (data.size() >= 2) {
      if (auto v = pearson(data.north_share(), data.south_share())) r = *v;
    }
    s["north_south_correlation"] = r;
  }
  if (spec.outputs.slope_fits) {
    try {
      s["central_slope"] = fit_to_json(central_slope_fit(data, spec.slope_window));
    } catch (const std::invalid_argument&) {
      s["central_slope"] = nullptr;
    }
    try {
      s["cube_exponent"] = cube_exponent_fit(data);
    } catch (const std::invalid_argument&) {
      s["cube_exponent"] = nullptr;
    }
  }

  // Limit-law check for district 1 when it is an isolated single urn with K = 1.
  const auto& cfg = spec.config;
  const auto& first = cfg.initial_allocation.blocks.front().counts_per_colour;
  const Count a = first[0];
  Count b = 0;
  for (std::size_t c = 1; c < first.size(); ++c) b += first[c];
  if (cfg.imitation_prob == 0.0 && cfg.reinforcement == 1 && a >= 1 && b >= 1) {
    const AnalyticCurve limit(BetaCdf{static_cast<unsigned>(a), static_cast<unsigned>(b)});
    s["district1_limit_ks"] = {{"reference", limit.name()},
                               {"statistic", ks_statistic(data.district1_share(), limit)},
                               {"critical_value_1pct", ks_critical_value(data.size(), 0.01)}};
  }
  return s;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentOutcome out;
  out.dataset = simulate_replicates(spec.config, spec.replicates, spec.replicate_options);
  out.summary = summarize(out.dataset, spec);

  if (spec.output_dir.empty()) return out;

  const auto& dir = spec.output_dir;
  if (spec.outputs.dataset) save_dataset_csv(dir / "dataset.csv", out.dataset);
  write_text_file(dir / "summary.json", out.summary.dump(2) + "\n");

  nlohmann::json manifest = {{"tool", "polyaurn"},
                             {"version", tool_version()},
                             {"scenario", spec.scenario},
                             {"replicates", spec.replicates},
                             {"master_seed", spec.config.seed},
                             {"tie_rule", tie_rule_name(spec.replicate_options.tie_rule)},
                             {"slope_window", spec.slope_window},
                             {"config", config_to_json(spec.config)},
                             {"spec", experiment_spec_to_json(spec)}};
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

  if (spec.outputs.plots) {
    for (auto kind : {PlotKind::seat_histogram, PlotKind::popular_histogram, PlotKind::district_histogram,
                      PlotKind::north_south, PlotKind::seat_vote}) {
      PlotOptions opts;
      opts.fit_line = kind == PlotKind::seat_vote;
      emit_plot(out.dataset, kind, opts, dir / (std::string(plot_kind_name(kind)) + ".svg"));
    }
  }
  return out;
}

}  // namespace polyaurn
