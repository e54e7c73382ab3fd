#include <cmath>
#include <numeric>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/measure.hpp"
#include "levy/path.hpp"
#include "levy/simulate.hpp"

using namespace levy;

namespace {

CadlagPath make_path(std::vector<CadlagPath::Event> events, double drift) {
  return CadlagPath(std::move(events), drift, 0x1p-10);
}

LevyTriplet cp_atom(double intensity, double value) {
  return LevyTriplet(
      LevyMeasureSpec(LevyMeasureSpec::CompoundPoisson{
          intensity, JumpLaw(JumpLaw::TwoPoint{value, 1.0, value})}),
      0.0, 0.0);
}

}  // namespace

TEST_CASE("value_at follows the cadlag convention") {
  CadlagPath line = make_path({}, 1.0);
  CHECK(line.value_at(0.5) == doctest::Approx(0.5));
  CadlagPath step = make_path({{0.4, 1.3}}, 0.0);
  CHECK(step.value_at(0.4) == doctest::Approx(1.3));  // right-continuous
  CHECK(step.value_at(0.39999) == 0.0);
  CHECK(step.value_at(1.0) == doctest::Approx(1.3));
  CHECK_THROWS_AS(step.value_at(1.5), DomainError);
}

TEST_CASE("path invariants are validated") {
  CHECK_THROWS_AS(make_path({{0.5, 1.0}, {0.5, 1.0}}, 0.0), DomainError);
  CHECK_THROWS_AS(make_path({{0.7, 1.0}, {0.4, 1.0}}, 0.0), DomainError);
  CHECK_THROWS_AS(make_path({{1.0, 1.0}}, 0.0), DomainError);
  CHECK_THROWS_AS(CadlagPath({}, 0.0, 0.0), DomainError);
}

TEST_CASE("lp_distance closed-form examples") {
  CadlagPath zero = make_path({}, 0.0);
  CadlagPath step = make_path({{0.25, 1.0}}, 0.0);
  CadlagPath line = make_path({}, 1.0);
  CHECK(lp_distance(step, step, 1.0) == 0.0);
  CHECK(lp_distance(step, zero, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(lp_distance(line, zero, 2.0) ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(lp_distance(step, zero, 0.5), DomainError);
}

TEST_CASE("lp_distance symmetry and triangle inequality on random paths") {
  Rng rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    auto random_path = [&] {
      int n = static_cast<int>(rng.next_u64() % 8);
      std::vector<double> times;
      for (int i = 0; i < n; ++i) times.push_back(rng.uniform_half_open());
      std::sort(times.begin(), times.end());
      times.erase(std::unique(times.begin(), times.end()), times.end());
      std::vector<CadlagPath::Event> ev;
      for (double t : times) ev.push_back({t, rng.normal()});
      return make_path(std::move(ev), rng.normal());
    };
    CadlagPath a = random_path(), b = random_path(), c = random_path();
    for (double p : {1.0, 2.0}) {
      double ab = lp_distance(a, b, p);
      CHECK(ab == doctest::Approx(lp_distance(b, a, p)).epsilon(1e-12));
      CHECK(ab <= lp_distance(a, c, p) + lp_distance(c, b, p) + 1e-12);
    }
  }
}

TEST_CASE("CSV round trip") {
  CadlagPath p({{0.125, -1.5}, {0.3333333333333333, 0.7}}, -0.25, 0x1p-14);
  CadlagPath back = CadlagPath::from_csv(p.to_csv());
  REQUIRE(back.events().size() == 2);
  CHECK(back.drift_rate() == p.drift_rate());
  CHECK(back.grid_step() == p.grid_step());
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.events()[i].time == p.events()[i].time);
    CHECK(back.events()[i].increment == p.events()[i].increment);
  }
  CHECK_THROWS_AS(CadlagPath::from_csv("garbage"), MalformedStream);
  // Unsorted rows are rejected on import.
  CHECK_THROWS_AS(
      CadlagPath::from_csv(
          "drift_rate,grid_step\n0,0.5\ntime,increment\n0.7,1\n0.4,1\n"),
      DomainError);
}

TEST_CASE("simulation is deterministic in the seed") {
  auto t = LevyTriplet(
      LevyMeasureSpec(LevyMeasureSpec::Stable{1.2, 0.5, 0.5}), 0.3, 0.1);
  SimConfig cfg;
  cfg.grid_step = 0x1p-8;
  cfg.seed = 99;
  CadlagPath a = simulate(t, cfg, 0.1);
  CadlagPath b = simulate(t, cfg, 0.1);
  REQUIRE(a.events().size() == b.events().size());
  for (std::size_t i = 0; i < a.events().size(); ++i) {
    CHECK(a.events()[i].time == b.events()[i].time);
    CHECK(a.events()[i].increment == b.events()[i].increment);
  }
  CHECK(a.drift_rate() == b.drift_rate());
  cfg.seed = 100;
  CadlagPath c = simulate(t, cfg, 0.1);
  bool differs = a.events().size() != c.events().size();
  for (std::size_t i = 0; !differs && i < a.events().size(); ++i)
    differs = a.events()[i].increment != c.events()[i].increment;
  CHECK(differs);
}

TEST_CASE("config validation") {
  auto t = LevyTriplet(LevyMeasureSpec(LevyMeasureSpec::GaussianOnly{}), 1.0, 0.0);
  SimConfig cfg;
  cfg.grid_step = 0.3;  // not dyadic
  CHECK_THROWS_AS(simulate(t, cfg, 0.1), DomainError);
  cfg.grid_step = 0x1p-4;
  cfg.small_jump_cutoff_ratio = 0.0;
  CHECK_THROWS_AS(simulate(t, cfg, 0.1), DomainError);
}

TEST_CASE("zero-measure process is the drift line") {
  auto t = LevyTriplet(LevyMeasureSpec(LevyMeasureSpec::GaussianOnly{}), 0.0, 1.0);
  SimConfig cfg;
  CadlagPath p = simulate(t, cfg, 0.1);
  CHECK(p.events().empty());
  CHECK(p.drift_rate() == 1.0);
  CHECK(p.value_at(0.5) == doctest::Approx(0.5));
}

TEST_CASE("jump count follows the Poisson law (chi-squared at 1%)") {
  auto t = cp_atom(1.0, 1.0);
  SimConfig cfg;
  cfg.grid_step = 0x1p-4;
  const int n = 20000;
  std::vector<long long> counts(7, 0);  // bins 0..5 and >=6
  for (int s = 0; s < n; ++s) {
    cfg.seed = 5000 + static_cast<std::uint64_t>(s);
    CadlagPath p = simulate(t, cfg, 0.5);
    for (const auto& e : p.events()) CHECK(e.increment == 1.0);
    std::size_t k = p.events().size();
    counts[std::min<std::size_t>(k, 6)]++;
  }
  double chi2 = 0.0;
  double fact = 1.0, cum = 0.0;
  for (int k = 0; k <= 5; ++k) {
    if (k > 0) fact *= k;
    double prob = std::exp(-1.0) / fact;
    cum += prob;
    double expect = n * prob;
    chi2 += (counts[k] - expect) * (counts[k] - expect) / expect;
  }
  double expect_tail = n * (1.0 - cum);
  chi2 += (counts[6] - expect_tail) * (counts[6] - expect_tail) / expect_tail;
  // 6 degrees of freedom, 1% critical value.
  CHECK(chi2 < 16.812);
}

TEST_CASE("martingale triplet has mean-zero terminal value") {
  auto t = LevyTriplet(
      LevyMeasureSpec(LevyMeasureSpec::Stable{1.5, 0.5, 0.5}), 0.2, 0.0);
  SimConfig cfg;
  cfg.grid_step = 0x1p-10;
  cfg.small_jump_cutoff_ratio = 0.1;
  const int n = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n; ++s) {
    cfg.seed = 777000 + static_cast<std::uint64_t>(s);
    double v = simulate(t, cfg, 1.0).value_at(1.0);
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / n;
  double se = std::sqrt((sum_sq / n - mean * mean) / n);
  CHECK(std::abs(mean) <= 4.0 * se);
}

TEST_CASE("jump sampler reproduces the F1 variance budget") {
  // lambda * E[x^2 ^ eps^2] + small-jump variance should equal
  // eps^2 F1(eps) - sigma^2 (compensation formula for the jump part).
  auto t = LevyTriplet(
      LevyMeasureSpec(LevyMeasureSpec::Stable{1.5, 0.5, 0.5}), 0.0, 0.0);
  const double eps = 0.5, delta = 0.01;
  double lambda = tail_mass(t, delta);
  Rng rng(31337);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = sample_jump_above(t, delta, rng);
    double v = std::min(x * x, eps * eps);
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / n;
  double se = std::sqrt((sum_sq / n - mean * mean) / n);
  double budget = lambda * mean + small_jump_variance(t, delta);
  double want = eps * eps * f1(t, eps);
  CHECK(std::abs(budget - want) <= 3.0 * lambda * se);
}
