#include "polyaurn/scenarios.hpp"

#include <stdexcept>

namespace polyaurn {

namespace {

InitialAllocation north_south(std::size_t n, std::vector<Count> north, std::vector<Count> south) {
  return {{AllocationBlock{n / 2, std::move(north)}, AllocationBlock{n - n / 2, std::move(south)}}};
}

}  // namespace

std::vector<Scenario> scenario_catalog(std::size_t n) {
  if (n < 2) throw std::invalid_argument("scenarios need at least two districts");
  std::vector<Scenario> out;
  out.push_back({"sym_1_1", "one voter of each party in every district", 2, 1,
                 InitialAllocation::uniform(n, {1, 1}), true});
  out.push_back({"sym_2_2", "two voters of each party in every district", 2, 1,
                 InitialAllocation::uniform(n, {2, 2}), true});
  out.push_back({"sym_1_1_K5", "one voter of each party, five voters added per step", 2, 5,
                 InitialAllocation::uniform(n, {1, 1}), true});
  out.push_back({"polar_2_1", "2:1 for party 1 in the north, 1:2 in the south", 2, 1,
                 north_south(n, {2, 1}, {1, 2}), true});
  out.push_back({"polar_3_1", "3:1 for party 1 in the north, 1:3 in the south", 2, 1,
                 north_south(n, {3, 1}, {1, 3}), true});
  if (n == kBaselineDistricts) {
    out.push_back({"third_party_i", "small party absent from 80 districts, 1,2,2 in 10, 2,1,1 in 10", 3,
                   1,
                   {{AllocationBlock{80, {0, 2, 2}}, AllocationBlock{10, {1, 2, 2}},
                     AllocationBlock{10, {2, 1, 1}}}},
                   false});
    out.push_back({"third_party_ii", "as third_party_i with a 3,1,1 regional base", 3, 1,
                   {{AllocationBlock{80, {0, 2, 2}}, AllocationBlock{10, {1, 2, 2}},
                     AllocationBlock{10, {3, 1, 1}}}},
                   false});
  }
  out.push_back({"third_party_iii", "1,2,2 in every district", 3, 1,
                 InitialAllocation::uniform(n, {1, 2, 2}), true});
  return out;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& s : scenario_catalog()) names.push_back(s.name);
  return names;
}

Scenario find_scenario(std::string_view name, std::size_t num_districts) {
  for (auto& s : scenario_catalog(num_districts)) {
    if (s.name == name) return s;
  }
  for (const auto& s : scenario_catalog()) {
    if (s.name == name) {
      throw std::invalid_argument("scenario '" + std::string(name) + "' is defined only for N = 100");
    }
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

SimulationConfig make_config(const Scenario& scenario, double imitation_prob,
                             Count target_total_balls, std::uint64_t seed) {
  SimulationConfig config;
  config.num_districts = scenario.allocation.district_count();
  config.num_colours = scenario.num_colours;
  config.imitation_prob = imitation_prob;
  config.reinforcement = scenario.reinforcement;
  config.initial_allocation = scenario.allocation;
  config.target_total_balls = target_total_balls;
  config.seed = seed;
  config.validate();
  return config;
}

}  // namespace polyaurn
