#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "polyaurn/election.hpp"

using namespace polyaurn;

namespace {

UrnState state_of(std::size_t n, std::size_t m, std::vector<Count> counts) {
  return UrnState::from_counts(n, m, std::move(counts), {0.0, 1});
}

}  // namespace

TEST_CASE("tally picks the plurality colour") {
  Rng rng(1);
  SUBCASE("(3,1) goes to colour 0") {
    const auto r = tally(state_of(1, 2, {3, 1}), TieRule::uniform_random, rng);
    CHECK(r.winners[0] == 0);
    CHECK(r.seats == std::vector<std::size_t>{1, 0});
    CHECK_FALSE(r.tie_flags[0]);
  }
  SUBCASE("(2,2) under lowest_index goes to colour 0 and is flagged") {
    const auto r = tally(state_of(1, 2, {2, 2}), TieRule::lowest_index, rng);
    CHECK(r.winners[0] == 0);
    CHECK(r.tie_flags[0]);
  }
  SUBCASE("landslide for colour 1") {
    std::vector<Count> counts;
    for (int u = 0; u < 100; ++u) {
      counts.push_back(1);
      counts.push_back(5);
    }
    const auto r = tally(state_of(100, 2, counts), TieRule::uniform_random, rng);
    CHECK(r.seats == std::vector<std::size_t>{0, 100});
    CHECK(r.popular_shares[1] == doctest::Approx(5.0 / 6.0));
  }
}

TEST_CASE("random tie breaking splits evenly") {
  const auto s = state_of(1, 3, {2, 2, 1});
  Rng rng(8);
  int zeros = 0;
  for (int i = 0; i < 10'000; ++i) {
    const auto r = tally(s, TieRule::uniform_random, rng);
    REQUIRE(r.winners[0] != 2);
    zeros += r.winners[0] == 0;
  }
  CHECK(std::abs(zeros - 5'000) < 250);
}

TEST_CASE("popular share is ball weighted") {
  Rng rng(1);
  const auto r = tally(state_of(2, 2, {1, 0, 1, 3}), TieRule::lowest_index, rng);
  CHECK(r.popular_shares[0] == doctest::Approx(0.4));
  CHECK(r.district_share(0, 0) == 1.0);
  CHECK(r.district_share(1, 0) == 0.25);
}

TEST_CASE("regional shares") {
  const auto split = RegionalSplit::north_south(100);
  SUBCASE("identical districts") {
    std::vector<Count> counts(200, 1);
    const auto shares = regional_shares(state_of(100, 2, counts), split);
    CHECK(shares[0][0] == 0.5);
    CHECK(shares[1][0] == 0.5);
  }
  SUBCASE("2:1 north, 1:2 south") {
    std::vector<Count> counts;
    for (int u = 0; u < 100; ++u) {
      counts.push_back(u < 50 ? 2 : 1);
      counts.push_back(u < 50 ? 1 : 2);
    }
    const auto shares = regional_shares(state_of(100, 2, counts), split);
    CHECK(shares[0][0] == doctest::Approx(2.0 / 3.0));
    CHECK(shares[1][0] == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("odd N puts the extra district in the south") {
    const auto odd = RegionalSplit::north_south(5);
    CHECK(std::count(odd.region_of_district.begin(), odd.region_of_district.end(), 0u) == 2);
  }
}

TEST_CASE("property: seats sum to N and m=2 winners hold a strict majority") {
  Rng gen(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + gen.below(20);
    const std::size_t m = 2 + gen.below(3);
    std::vector<Count> counts(n * m);
    for (std::size_t u = 0; u < n; ++u) {
      Count row = 0;
      for (std::size_t c = 0; c < m; ++c) row += counts[u * m + c] = gen.below(6);
      if (row == 0) counts[u * m] = 1;
    }
    const auto s = state_of(n, m, counts);
    const auto r = tally(s, TieRule::uniform_random, gen);
    CHECK(std::accumulate(r.seats.begin(), r.seats.end(), std::size_t{0}) == n);
    if (m == 2) {
      for (std::size_t u = 0; u < n; ++u) {
        if (r.tie_flags[u]) continue;
        CHECK((r.winners[u] == 0) == (r.district_share(u, 0) > 0.5));
      }
    }
  }
}

TEST_CASE("property: permuting colours permutes the outcome") {
  Rng gen(64);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen.below(10);
    const std::size_t m = 2 + gen.below(3);
    std::vector<Count> counts(n * m);
    for (auto& x : counts) x = 1 + gen.below(20);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = m - 1; i > 0; --i) std::swap(perm[i], perm[gen.below(i + 1)]);
    std::vector<Count> permuted(n * m);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t c = 0; c < m; ++c) permuted[u * m + perm[c]] = counts[u * m + c];
    }
    Rng ra(1);
    Rng rb(1);
    const auto a = tally(state_of(n, m, counts), TieRule::uniform_random, ra);
    const auto b = tally(state_of(n, m, permuted), TieRule::uniform_random, rb);
    for (std::size_t c = 0; c < m; ++c) {
      CHECK(a.popular_shares[c] == doctest::Approx(b.popular_shares[perm[c]]));
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (!a.tie_flags[u]) CHECK(perm[a.winners[u]] == b.winners[u]);
      CHECK(a.tie_flags[u] == b.tie_flags[u]);
    }
  }
}
