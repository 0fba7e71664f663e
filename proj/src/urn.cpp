#include "polyaurn/urn.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polyaurn {

InitialAllocation InitialAllocation::uniform(std::size_t num_districts,
                                             std::vector<Count> counts_per_colour) {
  return {{AllocationBlock{num_districts, std::move(counts_per_colour)}}};
}

std::size_t InitialAllocation::district_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.district_count;
  return n;
}

Count InitialAllocation::total_balls() const {
  Count total = 0;
  for (const auto& b : blocks) {
    total += b.district_count *
             std::accumulate(b.counts_per_colour.begin(), b.counts_per_colour.end(), Count{0});
  }
  return total;
}

void SimulationConfig::validate() const {
  if (num_districts < 1) throw std::invalid_argument("num_districts must be >= 1");
  if (num_colours < 1) throw std::invalid_argument("num_colours must be >= 1");
  if (!(imitation_prob >= 0.0 && imitation_prob <= 1.0)) {
    throw std::invalid_argument("imitation_prob must lie in [0, 1]");
  }
  if (reinforcement < 1) throw std::invalid_argument("reinforcement must be >= 1");
  if (num_districts == 1 && imitation_prob > 0.0) {
    throw std::invalid_argument("a single district cannot imitate (p must be 0 when N = 1)");
  }
  for (const auto& b : initial_allocation.blocks) {
    if (b.district_count == 0) throw std::invalid_argument("allocation block with zero districts");
    if (b.counts_per_colour.size() != num_colours) {
      throw std::invalid_argument("allocation block has " + std::to_string(b.counts_per_colour.size()) +
                                  " colours, expected " + std::to_string(num_colours));
    }
    if (std::accumulate(b.counts_per_colour.begin(), b.counts_per_colour.end(), Count{0}) == 0) {
      throw std::invalid_argument("every district needs at least one initial ball");
    }
  }
  if (initial_allocation.district_count() != num_districts) {
    throw std::invalid_argument("allocation blocks cover " +
                                std::to_string(initial_allocation.district_count()) +
                                " districts, expected " + std::to_string(num_districts));
  }
  if (target_total_balls < initial_allocation.total_balls()) {
    throw std::invalid_argument("target_total_balls is below the initial ball count");
  }
}

UrnState UrnState::from_counts(std::size_t num_districts, std::size_t num_colours,
                               std::vector<Count> counts, ProcessParams params) {
  if (num_districts < 1 || num_colours < 1) {
    throw std::invalid_argument("state needs at least one district and one colour");
  }
  if (counts.size() != num_districts * num_colours) {
    throw std::invalid_argument("count matrix has the wrong size");
  }
  if (num_districts == 1 && params.imitation_prob > 0.0) {
    throw std::invalid_argument("a single district cannot imitate (p must be 0 when N = 1)");
  }
  if (!(params.imitation_prob >= 0.0 && params.imitation_prob <= 1.0) || params.reinforcement < 1) {
    throw std::invalid_argument("invalid process parameters");
  }
  UrnState s;
  s.num_districts_ = num_districts;
  s.num_colours_ = num_colours;
  s.params_ = params;
  s.counts_ = std::move(counts);
  s.per_urn_totals_.assign(num_districts, 0);
  for (std::size_t u = 0; u < num_districts; ++u) {
    for (std::size_t c = 0; c < num_colours; ++c) s.per_urn_totals_[u] += s.count(u, c);
    if (s.per_urn_totals_[u] == 0) {
      throw std::invalid_argument("district " + std::to_string(u) + " has no balls");
    }
    s.grand_total_ += s.per_urn_totals_[u];
  }
  s.initial_total_ = s.grand_total_;
  return s;
}

Count UrnState::colour_total(std::size_t colour) const noexcept {
  Count total = 0;
  for (std::size_t u = 0; u < num_districts_; ++u) total += count(u, colour);
  return total;
}

void UrnState::apply(const DrawEvent& event) noexcept {
  counts_[event.target_urn * num_colours_ + event.colour] += params_.reinforcement;
  per_urn_totals_[event.target_urn] += params_.reinforcement;
  grand_total_ += params_.reinforcement;
  ++step_count_;
  assert(grand_total_ == initial_total_ + params_.reinforcement * step_count_);
}

bool UrnState::consistent() const noexcept {
  Count grand = 0;
  for (std::size_t u = 0; u < num_districts_; ++u) {
    Count row_total = 0;
    for (std::size_t c = 0; c < num_colours_; ++c) row_total += count(u, c);
    if (row_total != per_urn_totals_[u]) return false;
    grand += row_total;
  }
  return grand == grand_total_ &&
         grand_total_ == initial_total_ + params_.reinforcement * step_count_;
}

UrnState init_state(const SimulationConfig& config) {
  config.validate();
  std::vector<Count> counts;
  counts.reserve(config.num_districts * config.num_colours);
  for (const auto& block : config.initial_allocation.blocks) {
    for (std::size_t i = 0; i < block.district_count; ++i) {
      counts.insert(counts.end(), block.counts_per_colour.begin(), block.counts_per_colour.end());
    }
  }
  return UrnState::from_counts(config.num_districts, config.num_colours, std::move(counts),
                               {config.imitation_prob, config.reinforcement});
}

namespace {

std::size_t draw_colour(std::span<const Count> row, Count total, Rng& rng) {
  Count r = rng.below(total);
  std::size_t c = 0;
  while (r >= row[c]) {
    r -= row[c];
    ++c;
  }
  return c;
}

std::size_t draw_colour_uniform_present(std::span<const Count> row, Rng& rng) {
  std::size_t present = 0;
  for (Count x : row) present += x > 0;
  std::uint64_t pick = rng.below(present);
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] > 0 && pick-- == 0) return c;
  }
  return row.size() - 1;
}

}  // namespace

DrawEvent step(UrnState& state, Rng& rng, StepFault fault) {
  const std::size_t n = state.num_districts();
  const double p = state.params().imitation_prob;

  DrawEvent ev;
  ev.target_urn = static_cast<std::size_t>(rng.below(n));
  ev.source_urn = ev.target_urn;
  if (p > 0.0 && rng.bernoulli(p)) {
    auto other = static_cast<std::size_t>(rng.below(n - 1));
    ev.source_urn = other >= ev.target_urn ? other + 1 : other;
    ev.was_cross_district = true;
  }
  const auto source_row = state.row(ev.source_urn);
  ev.colour = fault == StepFault::uniform_colour
                  ? draw_colour_uniform_present(source_row, rng)
                  : draw_colour(source_row, state.urn_total(ev.source_urn), rng);
  state.apply(ev);
  return ev;
}

void run_until(UrnState& state, Count target_total_balls, Rng& rng) {
  while (state.grand_total() < target_total_balls) step(state, rng);
}

std::vector<double> vote_shares(const UrnState& state) {
  std::vector<double> shares(state.counts().size());
  for (std::size_t u = 0; u < state.num_districts(); ++u) {
    const auto total = static_cast<double>(state.urn_total(u));
    for (std::size_t c = 0; c < state.num_colours(); ++c) {
      shares[u * state.num_colours() + c] = static_cast<double>(state.count(u, c)) / total;
    }
  }
  return shares;
}

}  // namespace polyaurn
