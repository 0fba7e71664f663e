#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polyaurn/rng.hpp"

namespace polyaurn {

using Count = std::uint64_t;

/// A run of `district_count` consecutive districts sharing one initial
/// colour profile.
struct AllocationBlock {
  std::size_t district_count = 0;
  std::vector<Count> counts_per_colour;

  bool operator==(const AllocationBlock&) const = default;
};

struct InitialAllocation {
  std::vector<AllocationBlock> blocks;

  /// One block covering all `num_districts` districts.
  static InitialAllocation uniform(std::size_t num_districts,
                                   std::vector<Count> counts_per_colour);

  std::size_t district_count() const;
  Count total_balls() const;

  bool operator==(const InitialAllocation&) const = default;
};

struct SimulationConfig {
  std::size_t num_districts = 1;
  std::size_t num_colours = 2;
  double imitation_prob = 0.0;
  Count reinforcement = 1;
  InitialAllocation initial_allocation;
  Count target_total_balls = 0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on the first violated invariant.
  void validate() const;
};

/// Draw law parameters carried with a state so that `step` needs nothing else.
struct ProcessParams {
  double imitation_prob = 0.0;
  Count reinforcement = 1;

  bool operator==(const ProcessParams&) const = default;
};

struct DrawEvent {
  std::size_t target_urn = 0;
  std::size_t source_urn = 0;
  std::size_t colour = 0;
  bool was_cross_district = false;

  bool operator==(const DrawEvent&) const = default;
};

/// Ball counts of every (district, colour) pair plus cached totals.
class UrnState {
 public:
  UrnState() = default;

  /// Builds a state from a row-major N x m count matrix. Every urn must
  /// hold at least one ball; N = 1 requires p = 0.
  static UrnState from_counts(std::size_t num_districts,
                              std::size_t num_colours,
                              std::vector<Count> counts, ProcessParams params);

  std::size_t num_districts() const noexcept { return num_districts_; }
  std::size_t num_colours() const noexcept { return num_colours_; }
  const ProcessParams& params() const noexcept { return params_; }

  Count count(std::size_t urn, std::size_t colour) const noexcept {
    return counts_[urn * num_colours_ + colour];
  }
  std::span<const Count> row(std::size_t urn) const noexcept {
    return {counts_.data() + urn * num_colours_, num_colours_};
  }
  std::span<const Count> counts() const noexcept { return counts_; }
  std::span<const Count> per_urn_totals() const noexcept {
    return per_urn_totals_;
  }
  Count urn_total(std::size_t urn) const noexcept {
    return per_urn_totals_[urn];
  }
  Count grand_total() const noexcept { return grand_total_; }
  Count initial_total() const noexcept { return initial_total_; }
  std::uint64_t step_count() const noexcept { return step_count_; }

  /// Total balls of `colour` over all urns.
  Count colour_total(std::size_t colour) const noexcept;

  /// Adds `reinforcement` balls of the event's colour to its target urn.
  void apply(const DrawEvent& event) noexcept;

  /// Checks the cached totals and conservation law against the raw counts.
  bool consistent() const noexcept;

  bool operator==(const UrnState&) const = default;

 private:
  std::size_t num_districts_ = 0;
  std::size_t num_colours_ = 0;
  ProcessParams params_;
  std::vector<Count> counts_;
  std::vector<Count> per_urn_totals_;
  Count grand_total_ = 0;
  Count initial_total_ = 0;
  std::uint64_t step_count_ = 0;
};

UrnState init_state(const SimulationConfig& config);

/// Deliberate distortions of the draw law. Only the validation battery's
/// negative control uses anything but `none`.
enum class StepFault {
  none,
  uniform_colour,  // colour drawn uniformly among colours present in the source
};

/// Picks target urn, then source urn, then colour, and applies the event.
DrawEvent step(UrnState& state, Rng& rng, StepFault fault = StepFault::none);

/// Steps until grand_total >= target_total_balls (first crossing).
void run_until(UrnState& state, Count target_total_balls, Rng& rng);

/// Row-major N x m matrix of within-district colour proportions.
std::vector<double> vote_shares(const UrnState& state);

}  // namespace polyaurn
