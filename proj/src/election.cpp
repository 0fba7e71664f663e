#include "polyaurn/election.hpp"

#include <stdexcept>

namespace polyaurn {

ElectionResult tally(const UrnState& state, TieRule rule, Rng& rng) {
  const std::size_t n = state.num_districts();
  const std::size_t m = state.num_colours();

  ElectionResult res;
  res.num_districts = n;
  res.num_colours = m;
  res.district_shares = vote_shares(state);
  res.winners.resize(n);
  res.tie_flags.resize(n);
  res.seats.assign(m, 0);

  std::vector<std::size_t> leaders;
  leaders.reserve(m);
  for (std::size_t u = 0; u < n; ++u) {
    const auto row = state.row(u);
    Count best = 0;
    leaders.clear();
    for (std::size_t c = 0; c < m; ++c) {
      if (row[c] > best) {
        best = row[c];
        leaders.assign(1, c);
      } else if (row[c] == best) {
        leaders.push_back(c);
      }
    }
    std::size_t winner = leaders.front();
    if (leaders.size() > 1) {
      res.tie_flags[u] = true;
      if (rule == TieRule::uniform_random) winner = leaders[rng.below(leaders.size())];
    }
    res.winners[u] = winner;
    ++res.seats[winner];
  }

  res.popular_shares.resize(m);
  const auto grand = static_cast<double>(state.grand_total());
  for (std::size_t c = 0; c < m; ++c) {
    res.popular_shares[c] = static_cast<double>(state.colour_total(c)) / grand;
  }
  return res;
}

RegionalSplit RegionalSplit::north_south(std::size_t num_districts) {
  RegionalSplit split;
  split.region_names = {"north", "south"};
  split.region_of_district.resize(num_districts);
  for (std::size_t u = 0; u < num_districts; ++u) {
    split.region_of_district[u] = u < num_districts / 2 ? 0 : 1;
  }
  return split;
}

std::vector<std::vector<double>> regional_shares(const UrnState& state,
                                                 const RegionalSplit& split) {
  const std::size_t m = state.num_colours();
  if (split.region_of_district.size() != state.num_districts()) {
    throw std::invalid_argument("regional split does not cover every district");
  }
  std::vector<std::vector<Count>> colour_balls(split.num_regions(), std::vector<Count>(m, 0));
  std::vector<Count> region_balls(split.num_regions(), 0);
  for (std::size_t u = 0; u < state.num_districts(); ++u) {
    const std::size_t r = split.region_of_district[u];
    if (r >= split.num_regions()) throw std::invalid_argument("district mapped to unknown region");
    for (std::size_t c = 0; c < m; ++c) colour_balls[r][c] += state.count(u, c);
    region_balls[r] += state.urn_total(u);
  }
  std::vector<std::vector<double>> shares(split.num_regions(), std::vector<double>(m, 0.0));
  for (std::size_t r = 0; r < split.num_regions(); ++r) {
    if (region_balls[r] == 0) throw std::invalid_argument("region with no districts");
    for (std::size_t c = 0; c < m; ++c) {
      shares[r][c] = static_cast<double>(colour_balls[r][c]) / static_cast<double>(region_balls[r]);
    }
  }
  return shares;
}

}  // namespace polyaurn
