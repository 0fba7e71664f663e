// Acceptance battery. Usage: acceptance [criterion ...]; no arguments runs all.
// Prints one PASS/FAIL line per criterion and exits non-zero if any failed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyaurn/analytic.hpp"
#include "polyaurn/election.hpp"
#include "polyaurn/experiment.hpp"
#include "polyaurn/scenarios.hpp"
#include "polyaurn/stats.hpp"
#include "polyaurn/swing.hpp"
#include "polyaurn/validate.hpp"

using namespace polyaurn;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kReps = 1000;
constexpr Count kDesk = 100'000;
constexpr Count kLarge = 1'000'000;  // table slopes and cube fit need the larger population

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

ReplicateDataset run(const std::string& scenario, double p, Count target) {
  const auto spec = make_experiment_spec(scenario, p, kReps, kSeed, target);
  return simulate_replicates(spec.config, kReps, spec.replicate_options);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void oracle_equivalence(Outcome& o) {
  for (double p : {0.0, 0.3, 1.0}) {
    const double tv = multiurn_tv_distance(two_urn_config(p, {2, 1}, {1, 1}), 4, 1'000'000, kSeed);
    o.require(tv < 0.02, "p=" + fmt(p) + " TV=" + fmt(tv));
  }
}

void limit_law(Outcome& o) {
  const double crit = 0.0515;
  const auto d11 = run("sym_1_1", 0.0, kDesk).district1_share();
  const double u = ks_statistic(d11, AnalyticCurve{UniformCdf{}});
  o.require(u < crit, "1:1 vs Uniform D=" + fmt(u));
  const auto d22 = run("sym_2_2", 0.0, kDesk).district1_share();
  const double b = ks_statistic(d22, AnalyticCurve{BetaCdf{2, 2}});
  o.require(b < crit, "2:2 vs Beta(2,2) D=" + fmt(b));
}

void seat_distribution(Outcome& o) {
  const auto seats = run("sym_1_1", 0.0, kDesk).seats_party1();
  const double m = mean(seats);
  const double v = sample_variance(seats);
  o.require(std::abs(m - 50.0) <= 1.6, "mean=" + fmt(m));
  o.require(v >= 18.75 && v <= 31.25, "var=" + fmt(v));
}

void north_south(Outcome& o) {
  for (double p : {0.0, 0.2}) {
    const auto data = run("sym_1_1", p, kDesk);
    const auto r = pearson(data.north_share(), data.south_share());
    const bool ok = r && (p == 0.0 ? std::abs(*r) < 0.1 : *r > 0.3);
    o.require(ok, "p=" + fmt(p) + " r=" + (r ? fmt(*r) : std::string("undefined")));
  }
}

void table_slopes(Outcome& o) {
  struct Cell {
    const char* scenario;
    double p;
    double reference;
  };
  const Cell cells[] = {{"sym_1_1", 0.0, 1.48}, {"sym_1_1", 0.1, 2.59}, {"sym_1_1", 0.2, 4.79},
                        {"sym_2_2", 0.0, 1.67}, {"sym_2_2", 0.1, 2.91}, {"sym_2_2", 0.2, 5.25}};
  for (const auto& c : cells) {
    const double slope = central_slope_fit(run(c.scenario, c.p, kLarge)).slope;
    o.require(std::abs(slope - c.reference) <= 0.2 * c.reference,
              std::string(c.scenario) + " p=" + fmt(c.p) + " slope=" + fmt(slope) + " ref=" + fmt(c.reference));
  }
}

void exact_curves(Outcome& o) {
  const auto n2 = [](double x) { return seatvote_numeric(2, x); };
  const auto n3 = [](double x) { return seatvote_numeric(3, x); };
  const double s2 = central_difference(n2, 0.5);
  const double s3 = central_difference(n3, 0.5);
  o.require(std::abs(s2 - 1.0) < 1e-3, "N=2 slope=" + fmt(s2, 8));
  o.require(std::abs(s3 - 2.0) < 1e-3, "N=3 slope=" + fmt(s3, 8));
  double worst = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double x = i / 1000.0;
    worst = std::max(worst, std::abs(seatvote_numeric(2, x) - seatvote_exact_N2(x)));
  }
  o.require(worst < 1e-8, "N=2 max|numeric-closed|=" + fmt(worst, 3));
}

void cube_fit(Outcome& o) {
  const double k = cube_exponent_fit(run("sym_1_1", 0.5, kLarge));
  o.require(k >= 20.0 && k <= 40.0, "k=" + fmt(k));
}

void swing(Outcome& o) {
  for (double p : {0.0, 0.1}) {
    SwingSpec spec;
    spec.imitation_prob = p;
    spec.replicates = kReps;
    spec.seed = kSeed;
    const auto fit = run_swing(spec).fit;
    const bool ok = p == 0.0 ? std::abs(fit.slope) < 0.05 : fit.slope > 0.05;
    o.require(ok, "p=" + fmt(p) + " slope=" + fmt(fit.slope) + " intercept=" + fmt(fit.intercept));
  }
}

void third_party(Outcome& o) {
  const auto cfg = make_config(find_scenario("third_party_i"), 0.0, kDesk, kSeed);
  std::size_t max_seats = 0;
  std::size_t base_wins = 0;
  for (std::uint64_t r = 0; r < kReps; ++r) {
    auto state = init_state(cfg);
    Rng rng(derive_stream_seed(cfg.seed, r));
    run_until(state, cfg.target_total_balls, rng);
    const auto result = tally(state, TieRule::uniform_random, rng);
    max_seats = std::max(max_seats, result.seats[0]);
    for (std::size_t u = 0; u < 80; ++u) base_wins += result.winners[u] == 0;
  }
  o.require(max_seats <= 20, "max party-1 seats=" + std::to_string(max_seats));
  o.require(base_wins == 0, "wins in first 80 districts=" + std::to_string(base_wins));
}

void determinism(Outcome& o) {
  const auto root = fs::temp_directory_path() / "polyaurn_acceptance_determinism";
  fs::remove_all(root);
  auto spec = make_experiment_spec("polar_2_1", 0.1, kReps, kSeed, kDesk);
  spec.output_dir = root / "a";
  spec.replicate_options.threads = 1;
  run_experiment(spec);

  auto replay = experiment_spec_from_json(nlohmann::json::parse(slurp(root / "a" / "manifest.json")));
  replay.output_dir = root / "b";
  replay.replicate_options.threads = 1;
  run_experiment(replay);

  auto threaded = spec;
  threaded.output_dir = root / "c";
  threaded.replicate_options.threads = 4;
  run_experiment(threaded);

  const auto a = slurp(root / "a" / "dataset.csv");
  o.require(!a.empty(), "csv bytes=" + std::to_string(a.size()));
  o.require(a == slurp(root / "b" / "dataset.csv"), "manifest replay identical");
  o.require(a == slurp(root / "c" / "dataset.csv"), "4 workers identical");
  fs::remove_all(root);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"single-urn limit law", limit_law},
      {"seat distribution at p=0", seat_distribution},
      {"north-south correlation", north_south},
      {"central slopes", table_slopes},
      {"exact curves", exact_curves},
      {"cube-law fit", cube_fit},
      {"inter-election swing", swing},
      {"third-party base", third_party},
      {"determinism", determinism},
  };

  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const long id = std::strtol(argv[i], nullptr, 10);
    if (id < 1 || id > static_cast<long>(criteria.size())) {
      std::cerr << "unknown criterion: " << argv[i] << '\n';
      return 2;
    }
    selected.insert(static_cast<std::size_t>(id));
  }

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && !selected.count(i + 1)) continue;
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": "
              << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
