#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyaurn/rng.hpp"
#include "polyaurn/urn.hpp"

namespace polyaurn {

enum class TieRule {
  uniform_random,  // uniform among the tied leaders, drawn from the caller's stream
  lowest_index,
};

/// First-past-the-post outcome of one state.
struct ElectionResult {
  std::size_t num_districts = 0;
  std::size_t num_colours = 0;
  std::vector<double> district_shares;  // row-major N x m
  std::vector<std::size_t> winners;
  std::vector<std::size_t> seats;
  std::vector<double> popular_shares;  // ball-weighted over all districts
  std::vector<bool> tie_flags;

  double district_share(std::size_t urn, std::size_t colour) const {
    return district_shares[urn * num_colours + colour];
  }
};

ElectionResult tally(const UrnState& state, TieRule rule, Rng& rng);

/// Assignment of districts to labelled regions.
struct RegionalSplit {
  std::vector<std::size_t> region_of_district;
  std::vector<std::string> region_names;

  /// First floor(N/2) districts "north", the rest "south".
  static RegionalSplit north_south(std::size_t num_districts);

  std::size_t num_regions() const noexcept { return region_names.size(); }
};

/// result[r][c] = balls of colour c in region r / balls in region r.
std::vector<std::vector<double>> regional_shares(const UrnState& state,
                                                 const RegionalSplit& split);

}  // namespace polyaurn
