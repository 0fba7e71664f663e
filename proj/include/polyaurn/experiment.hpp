#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "polyaurn/election.hpp"
#include "polyaurn/stats.hpp"
#include "polyaurn/urn.hpp"

namespace polyaurn {

/// Raised when an output file or directory cannot be written or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReplicateOptions {
  TieRule tie_rule = TieRule::uniform_random;
  bool keep_district_shares = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// One independent run of `config` on the stream derived from
/// (config.seed, replicate_id), tallied into a dataset row.
ReplicateRow simulate_replicate(const SimulationConfig& config, std::uint64_t replicate_id,
                                const ReplicateOptions& options = {});

/// `replicates` runs in parallel; rows are ordered by replicate id and do not
/// depend on the worker count.
ReplicateDataset simulate_replicates(const SimulationConfig& config, std::size_t replicates,
                                     const ReplicateOptions& options = {});

struct OutputRequest {
  bool dataset = true;
  bool histograms = true;
  bool correlations = true;
  bool slope_fits = true;
  bool plots = false;
};

struct ExperimentSpec {
  std::string scenario;
  SimulationConfig config;
  std::size_t replicates = 1000;
  OutputRequest outputs;
  std::filesystem::path output_dir;  // empty: compute only, write nothing
  double slope_window = 1.0;
  ReplicateOptions replicate_options;

  void validate() const;
};

/// Spec for a catalog scenario. num_districts = 0 keeps the scenario's size.
ExperimentSpec make_experiment_spec(const std::string& scenario, double imitation_prob,
                                    std::size_t replicates, std::uint64_t seed,
                                    Count target_total_balls, std::size_t num_districts = 0);

/// Reads an ExperimentSpec from a JSON document. Keys: scenario, p, replicates,
/// seed, target_total_balls, num_districts, output_dir, slope_window,
/// tie_rule, outputs{dataset,histograms,correlations,slope_fits,plots}.
ExperimentSpec experiment_spec_from_json(const nlohmann::json& doc);
nlohmann::json experiment_spec_to_json(const ExperimentSpec& spec);

struct ExperimentOutcome {
  ReplicateDataset dataset;
  nlohmann::json summary;
};

/// Summary statistics requested by `spec.outputs` over `data`.
nlohmann::json summarize(const ReplicateDataset& data, const ExperimentSpec& spec);

/// Runs the replicates and, when an output directory is set, writes
/// dataset.csv, summary.json, manifest.json and any requested plots.
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

/// Version string recorded in manifests.
std::string tool_version();

}  // namespace polyaurn
