#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyaurn/urn.hpp"

namespace polyaurn {

/// Named initial conditions for the baseline N = 100 experiments.
struct Scenario {
  std::string name;
  std::string description;
  std::size_t num_colours = 2;
  Count reinforcement = 1;
  InitialAllocation allocation;
  bool resizable = false;  // symmetric/polarised scenarios scale with N
};

constexpr std::size_t kBaselineDistricts = 100;
constexpr Count kDeskTargetBalls = 100'000;

/// The built-in scenarios at `num_districts` districts. Scenarios that are not
/// resizable exist only at N = 100 and are omitted for other N.
std::vector<Scenario> scenario_catalog(std::size_t num_districts = kBaselineDistricts);

std::vector<std::string> scenario_names();

/// Throws std::invalid_argument for unknown names, or for a fixed-size
/// scenario requested at another N.
Scenario find_scenario(std::string_view name, std::size_t num_districts = kBaselineDistricts);

/// Config for `scenario` with imitation probability p.
SimulationConfig make_config(const Scenario& scenario, double imitation_prob,
                             Count target_total_balls, std::uint64_t seed);

}  // namespace polyaurn
