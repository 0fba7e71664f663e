#include "polyaurn/swing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "polyaurn/election.hpp"
#include "polyaurn/parallel.hpp"

namespace polyaurn {

std::vector<Count> apportion_largest_remainder(std::span<const Count> weights, Count total) {
  using Wide = unsigned __int128;
  const Wide weight_sum = std::accumulate(weights.begin(), weights.end(), Wide{0});
  if (weights.empty() || weight_sum == 0) throw std::invalid_argument("apportionment needs positive weights");

  std::vector<Count> seats(weights.size());
  std::vector<Wide> remainder(weights.size());
  Count assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const Wide quota = static_cast<Wide>(weights[i]) * total;
    seats[i] = static_cast<Count>(quota / weight_sum);
    remainder[i] = quota % weight_sum;
    assigned += seats[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++seats[order[k]];
  return seats;
}

UrnState rescale_state(const UrnState& state, Count rescale_total) {
  const std::size_t n = state.num_districts();
  const std::size_t m = state.num_colours();
  const auto populations = apportion_largest_remainder(state.per_urn_totals(), rescale_total);
  std::vector<Count> counts;
  counts.reserve(n * m);
  for (std::size_t u = 0; u < n; ++u) {
    if (populations[u] == 0) {
      throw std::invalid_argument("district " + std::to_string(u + 1) + " is empty after rescaling to " +
                                  std::to_string(rescale_total) + " balls");
    }
    const auto parties = apportion_largest_remainder(state.row(u), populations[u]);
    counts.insert(counts.end(), parties.begin(), parties.end());
  }
  return UrnState::from_counts(n, m, std::move(counts), state.params());
}

void SwingSpec::validate() const {
  if (num_districts < 2) throw std::invalid_argument("swing needs at least two districts");
  if (!(imitation_prob >= 0.0 && imitation_prob <= 1.0)) {
    throw std::invalid_argument("imitation_prob must lie in [0, 1]");
  }
  if (grow_target == 0 || rescale_total == 0 || regrow_target == 0) {
    throw std::invalid_argument("swing targets must be positive");
  }
  if (rescale_total < num_districts) {
    throw std::invalid_argument("rescale_total must give every district at least one voter");
  }
  if (grow_target < 2 * num_districts) throw std::invalid_argument("grow_target is below the initial population");
  if (replicates < 2) throw std::invalid_argument("swing regression needs at least two replicates");
  if (tracked_district >= num_districts) throw std::invalid_argument("tracked district out of range");
}

SwingRecord swing_replicate(const SwingSpec& spec, std::uint64_t replicate_id) {
  Rng rng(derive_stream_seed(spec.seed, replicate_id));
  SimulationConfig config;
  config.num_districts = spec.num_districts;
  config.num_colours = 2;
  config.imitation_prob = spec.imitation_prob;
  config.initial_allocation = InitialAllocation::uniform(spec.num_districts, {1, 1});
  config.target_total_balls = spec.grow_target;
  UrnState state = init_state(config);
  run_until(state, spec.grow_target, rng);

  const auto d = spec.tracked_district;
  const double old_local = static_cast<double>(state.count(d, 0)) / static_cast<double>(state.urn_total(d));
  const double old_national =
      static_cast<double>(state.colour_total(0)) / static_cast<double>(state.grand_total());

  UrnState regrown = rescale_state(state, spec.rescale_total);
  run_until(regrown, spec.regrow_target, rng);

  const double new_local =
      static_cast<double>(regrown.count(d, 0)) / static_cast<double>(regrown.urn_total(d));
  const double new_national =
      static_cast<double>(regrown.colour_total(0)) / static_cast<double>(regrown.grand_total());
  return {old_local, new_local - old_local, new_national - old_national};
}

SwingOutcome run_swing(const SwingSpec& spec) {
  spec.validate();
  SwingOutcome out;
  out.records.resize(spec.replicates);
  parallel_for(spec.replicates, spec.threads,
               [&](std::size_t r) { out.records[r] = swing_replicate(spec, r); });
  out.fit = swing_regression(out.records);
  return out;
}

}  // namespace polyaurn
