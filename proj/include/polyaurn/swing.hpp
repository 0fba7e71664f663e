#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polyaurn/stats.hpp"
#include "polyaurn/urn.hpp"

namespace polyaurn {

/// Largest-remainder (Hamilton) apportionment of `total` units in proportion
/// to `weights`. Exact integer arithmetic; equal remainders favour the lower
/// index. The result always sums to `total`.
std::vector<Count> apportion_largest_remainder(std::span<const Count> weights, Count total);

/// Shrinks a state to `rescale_total` balls: district populations are
/// apportioned by largest remainder, then each district's colours within its
/// new population. Throws std::invalid_argument if a district would be empty.
UrnState rescale_state(const UrnState& state, Count rescale_total);

/// Grow, rescale, regrow protocol for measuring inter-election swing.
struct SwingSpec {
  std::size_t num_districts = 100;
  double imitation_prob = 0.0;
  Count grow_target = 1'000'000;
  Count rescale_total = 600;
  Count regrow_target = 1'000'000;
  std::size_t replicates = 1000;
  std::size_t tracked_district = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  void validate() const;
};

/// One replicate: districts start at one ball of each of two colours, grow to
/// grow_target, rescale, regrow. Swings are for colour 0; local is the tracked
/// district's share change, national the ball-weighted popular share change.
SwingRecord swing_replicate(const SwingSpec& spec, std::uint64_t replicate_id);

struct SwingOutcome {
  std::vector<SwingRecord> records;
  SlopeFit fit;
};

SwingOutcome run_swing(const SwingSpec& spec);

}  // namespace polyaurn
