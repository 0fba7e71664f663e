#include "polyaurn/validate.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "polyaurn/analytic.hpp"
#include "polyaurn/experiment.hpp"
#include "polyaurn/number_format.hpp"
#include "polyaurn/scenarios.hpp"
#include "polyaurn/stats.hpp"

namespace polyaurn {

SimulationConfig two_urn_config(double imitation_prob, std::vector<Count> urn0, std::vector<Count> urn1) {
  SimulationConfig c;
  c.num_districts = 2;
  c.num_colours = urn0.size();
  c.imitation_prob = imitation_prob;
  c.reinforcement = 1;
  c.initial_allocation.blocks = {AllocationBlock{1, std::move(urn0)}, AllocationBlock{1, std::move(urn1)}};
  c.target_total_balls = c.initial_allocation.total_balls();
  c.validate();
  return c;
}

double multiurn_tv_distance(const SimulationConfig& config, unsigned steps, std::size_t samples,
                            std::uint64_t seed, StepFault fault) {
  const ExactPmf exact = enumerate_multiurn(config, steps);
  SimulationConfig sized = config;
  sized.target_total_balls = std::max(config.target_total_balls, config.initial_allocation.total_balls());
  const UrnState start = init_state(sized);

  std::map<std::vector<Count>, std::size_t> freq;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    UrnState state = start;
    for (unsigned i = 0; i < steps; ++i) step(state, rng, fault);
    ++freq[std::vector<Count>(state.counts().begin(), state.counts().end())];
  }
  std::map<std::vector<Count>, double> diff;
  for (std::size_t i = 0; i < exact.support.size(); ++i) diff[exact.support[i]] -= exact.probabilities[i];
  for (const auto& [k, n] : freq) diff[k] += static_cast<double>(n) / static_cast<double>(samples);
  double tv = 0.0;
  for (const auto& [k, d] : diff) tv += std::abs(d);
  return 0.5 * tv;
}

double single_urn_tv_distance(std::span<const Count> initial, unsigned draws, std::size_t samples,
                              std::uint64_t seed, StepFault fault) {
  const std::size_t m = initial.size();
  const UrnState start = UrnState::from_counts(1, m, {initial.begin(), initial.end()}, {0.0, 1});
  const auto support = compositions(draws, m);
  std::map<std::vector<Count>, std::size_t> freq;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    UrnState state = start;
    for (unsigned i = 0; i < draws; ++i) step(state, rng, fault);
    std::vector<Count> added(m);
    for (std::size_t c = 0; c < m; ++c) added[c] = state.count(0, c) - initial[c];
    ++freq[added];
  }
  double tv = 0.0;
  for (const auto& added : support) {
    const double exact = dirichlet_multinomial_pmf(initial, draws, added);
    const auto it = freq.find(added);
    const double observed = it == freq.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(samples);
    tv += std::abs(exact - observed);
  }
  return 0.5 * tv;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

void ValidationReport::print(std::ostream& out) const {
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
  const auto passed = std::count_if(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
  out << passed << '/' << checks.size() << " checks passed\n";
}

namespace {

class Battery {
 public:
  explicit Battery(ValidationReport& report) : report_(report) {}

  void check(std::string name, bool passed, std::string detail = {}) {
    report_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

  void below(std::string name, double value, double bound) {
    check(std::move(name), value < bound, format_number(value) + " < " + format_number(bound));
  }

 private:
  ValidationReport& report_;
};

std::vector<double> grid(double lo, double hi, double step) {
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
  std::vector<double> xs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) xs[i] = std::min(hi, lo + static_cast<double>(i) * step);
  return xs;
}

double max_grid_error(const std::function<double(double)>& f, double lo, double hi, double step) {
  double worst = 0.0;
  for (double x : grid(lo, hi, step)) worst = std::max(worst, std::abs(f(x)));
  return worst;
}

bool monotone_on_grid(const std::function<double(double)>& f, double lo, double hi, double step) {
  double prev = f(lo);
  for (double x : grid(lo, hi, step)) {
    const double y = f(x);
    if (y < prev - 1e-12) return false;
    prev = y;
  }
  return true;
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& opt) {
  ValidationReport report;
  Battery b(report);
  const StepFault fault = opt.corrupt_step ? StepFault::uniform_colour : StepFault::none;

  // Exact pmfs are normalised.
  {
    double worst = 0.0;
    for (const std::vector<Count>& a : {std::vector<Count>{1, 1}, {2, 1}, {2, 2}, {1, 2, 2}, {0, 2, 2}}) {
      for (unsigned n = 0; n <= 8; ++n) {
        double total = 0.0;
        for (const auto& k : compositions(n, a.size())) total += dirichlet_multinomial_pmf(a, n, k);
        worst = std::max(worst, std::abs(total - 1.0));
      }
    }
    b.below("dirichlet-multinomial pmf sums to 1 (n <= 8)", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (double p : {0.0, 0.3, 1.0}) {
      worst = std::max(worst, std::abs(enumerate_multiurn(two_urn_config(p, {2, 1}, {1, 1}), 6).total() - 1.0));
    }
    b.below("multi-urn enumeration sums to 1", worst, 1e-12);
  }
  {
    SimulationConfig single;
    single.num_districts = 1;
    single.num_colours = 2;
    single.initial_allocation = InitialAllocation::uniform(1, {1, 1});
    single.target_total_balls = 2;
    const auto pmf = enumerate_multiurn(single, 4);
    double worst = 0.0;
    for (std::size_t i = 0; i < pmf.support.size(); ++i) {
      const std::vector<Count> added{pmf.support[i][0] - 1, pmf.support[i][1] - 1};
      const std::vector<Count> a{1, 1};
      worst = std::max(worst, std::abs(pmf.probabilities[i] - dirichlet_multinomial_pmf(a, 4, added)));
    }
    b.below("enumeration with N = 1 equals the Dirichlet-multinomial pmf", worst, 1e-12);
  }
  {
    // p = 0: urn 0's marginal depends only on how many steps target it.
    const auto cfg = two_urn_config(0.0, {2, 1}, {1, 1});
    const unsigned steps = 4;
    const auto pmf = enumerate_multiurn(cfg, steps);
    std::map<std::pair<Count, Count>, double> marginal;
    for (std::size_t i = 0; i < pmf.support.size(); ++i) {
      marginal[{pmf.support[i][0], pmf.support[i][1]}] += pmf.probabilities[i];
    }
    double worst = 0.0;
    for (const auto& [counts, prob] : marginal) {
      const unsigned draws = static_cast<unsigned>(counts.first + counts.second - 3);
      const double hits = binomial_pmf(steps, 0.5)[draws];
      const std::vector<Count> a{2, 1};
      const std::vector<Count> added{counts.first - 2, counts.second - 1};
      worst = std::max(worst, std::abs(prob - hits * dirichlet_multinomial_pmf(a, draws, added)));
    }
    b.below("enumeration with p = 0 factorises into single-urn marginals", worst, 1e-12);
  }

  // Sampler against exact laws.
  {
    const std::vector<Count> a{1, 1};
    b.below("single urn Monte Carlo vs Dirichlet-multinomial, n = 6 (TV)",
            single_urn_tv_distance(a, 6, opt.oracle_samples, opt.seed, fault), 0.02);
  }
  for (double p : {0.0, 0.3, 1.0}) {
    b.below("two-urn Monte Carlo vs enumeration, p = " + format_number(p) + ", 4 steps (TV)",
            multiurn_tv_distance(two_urn_config(p, {2, 1}, {1, 1}), 4, opt.oracle_samples, opt.seed + 1, fault),
            0.02);
  }

  // Analytic curves.
  {
    const std::vector<std::pair<unsigned, unsigned>> params{{1, 1}, {2, 2}, {2, 1}, {3, 1}, {1, 3}};
    double worst = 0.0;
    for (auto [a, bb] : params) {
      auto density = [a = a, bb = bb](double t) {
        return std::pow(t, a - 1.0) * std::pow(1.0 - t, bb - 1.0);
      };
      const double norm = adaptive_simpson(density, 0.0, 1.0, 1e-13);
      for (double x = 0.05; x < 1.0; x += 0.05) {
        worst = std::max(worst, std::abs(beta_cdf_int(a, bb, x) - adaptive_simpson(density, 0.0, x, 1e-13) / norm));
      }
    }
    b.below("integer beta CDF matches quadrature of the density", worst, 1e-9);
  }
  b.below("cube curve symmetry y(x) + y(1-x) = 1",
          max_grid_error([](double x) { return cube_curve(3.0, x) + cube_curve(3.0, 1.0 - x) - 1.0; }, 0.001, 0.999,
                         0.001),
          1e-12);
  b.below("cube curve logit identity logit(y) = k logit(x)",
          max_grid_error([](double x) { return logit(cube_curve(3.0, x)) - 3.0 * logit(x); }, 0.01, 0.99, 0.001),
          1e-10);
  b.below("cube curve central slope equals k",
          std::abs(central_difference([](double x) { return cube_curve(3.0, x); }, 0.5, 1e-6) - 3.0), 1e-6);
  b.below("N = 2 seat-vote curve symmetry",
          max_grid_error([](double x) { return seatvote_exact_N2(x) + seatvote_exact_N2(1.0 - x) - 1.0; }, 0.0, 1.0,
                         0.001),
          1e-12);
  b.check("seat-vote curves are non-decreasing",
          monotone_on_grid(seatvote_exact_N2, 0.0, 1.0, 0.001) &&
              monotone_on_grid([](double x) { return cube_curve(30.0, x); }, 0.0, 1.0, 0.001) &&
              monotone_on_grid([](double x) { return seatvote_numeric(3, x); }, 0.001, 0.999, 0.001));
  b.below("numeric N = 2 seat-vote curve matches closed form",
          max_grid_error([](double x) { return seatvote_numeric(2, x) - seatvote_exact_N2(x); }, 0.001, 0.999, 0.001),
          1e-8);
  b.below("numeric central slope N = 2 is 1",
          std::abs(central_difference([](double x) { return seatvote_numeric(2, x); }, 0.5) - 1.0), 1e-3);
  b.below("numeric central slope N = 3 is 2",
          std::abs(central_difference([](double x) { return seatvote_numeric(3, x); }, 0.5) - 2.0), 1e-3);

  // Process invariants on a short run.
  {
    const auto cfg = make_config(find_scenario("polar_2_1"), 0.3, 20'000, opt.seed);
    UrnState state = init_state(cfg);
    Rng rng(opt.seed);
    bool ok = true;
    std::vector<Count> prev(state.counts().begin(), state.counts().end());
    while (state.grand_total() < cfg.target_total_balls) {
      const auto ev = step(state, rng, fault);
      ok = ok && ev.was_cross_district == (ev.target_urn != ev.source_urn) &&
           state.grand_total() == state.initial_total() + state.step_count();
      const auto now = state.counts();
      for (std::size_t i = 0; i < now.size(); ++i) ok = ok && now[i] >= prev[i];
      prev.assign(now.begin(), now.end());
    }
    b.check("conservation, monotone counts and event consistency", ok && state.consistent());

    const auto third = make_config(find_scenario("third_party_i"), 0.0, 20'000, opt.seed);
    UrnState t = init_state(third);
    Rng rng2(opt.seed);
    run_until(t, third.target_total_balls, rng2);
    bool absent = true;
    for (std::size_t u = 0; u < 80; ++u) absent = absent && t.count(u, 0) == 0;
    b.check("colour absent from an isolated urn never appears", absent);
  }
  {
    const auto cfg = make_config(find_scenario("sym_1_1"), 0.2, 5'000, opt.seed);
    ReplicateOptions ro;
    ro.threads = opt.threads;
    const auto a = simulate_replicates(cfg, 20, ro);
    ro.threads = 1;
    const auto c = simulate_replicates(cfg, 20, ro);
    b.check("replicates are deterministic and independent of worker count", a.rows == c.rows);
  }

  // Limit laws at p = 0.
  {
    ReplicateOptions ro;
    ro.threads = opt.threads;
    ro.keep_district_shares = true;
    const auto data = simulate_replicates(
        make_config(find_scenario("sym_1_1"), 0.0, opt.target_total_balls, opt.seed), opt.replicates, ro);
    const double crit = ks_critical_value(data.size(), 0.01);
    b.below("p = 0, 1:1: district share vs Uniform[0,1] (KS)",
            ks_statistic(data.district1_share(), AnalyticCurve(UniformCdf{})), crit);
    const auto r = pearson(data.north_share(), data.south_share());
    b.check("p = 0: north-south correlation near zero", r && std::abs(*r) < 0.1,
            r ? "|r| = " + format_number(std::abs(*r)) : "undefined");
    std::vector<double> first, second;
    for (const auto& row : data.rows) {
      first.push_back(row.district_shares[0]);
      second.push_back(row.district_shares[1]);
    }
    const auto cross = pearson(first, second);
    b.check("p = 0: districts 1 and 2 uncorrelated", cross && std::abs(*cross) < 0.1,
            cross ? "|r| = " + format_number(std::abs(*cross)) : "undefined");

    std::vector<std::size_t> seat_counts(data.num_districts + 1, 0);
    for (const auto& row : data.rows) ++seat_counts[row.seats[0]];
    const auto chi = chi_square_statistic(seat_counts, binomial_pmf(data.num_districts, 0.5));
    b.below("p = 0: seat counts vs Binomial(N, 1/2) (chi-square, 1%)", chi.statistic,
            chi_square_critical_value(chi.degrees_of_freedom, 0.01));
  }
  return report;
}

}  // namespace polyaurn
