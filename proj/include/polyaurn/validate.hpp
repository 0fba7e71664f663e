#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polyaurn/urn.hpp"

namespace polyaurn {

/// Total variation distance between Monte Carlo frequencies of the final
/// count matrix after `steps` steps and the exact enumerated law.
double multiurn_tv_distance(const SimulationConfig& config, unsigned steps, std::size_t samples,
                            std::uint64_t seed, StepFault fault = StepFault::none);

/// Same comparison for a single urn (K = 1) against the Dirichlet-multinomial pmf.
double single_urn_tv_distance(std::span<const Count> initial, unsigned draws, std::size_t samples,
                              std::uint64_t seed, StepFault fault = StepFault::none);

/// Two districts with the given rows, K = 1, target = initial total.
SimulationConfig two_urn_config(double imitation_prob, std::vector<Count> urn0, std::vector<Count> urn1);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
  void print(std::ostream& out) const;
};

struct ValidationOptions {
  bool corrupt_step = false;  // negative control: sampler ignores colour proportions
  std::size_t oracle_samples = 1'000'000;
  std::size_t replicates = 1000;
  Count target_total_balls = 100'000;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
};

/// Runs the oracle battery: exact pmfs against Monte Carlo, analytic curve
/// identities, limit laws and process invariants.
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace polyaurn
