#include <cmath>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/theory.hpp"

using namespace levy;

namespace {

LevyTriplet stable(double alpha, double cm, double cp) {
  return LevyTriplet(LevyMeasureSpec(LevyMeasureSpec::Stable{alpha, cm, cp}),
                     0.0, 0.0);
}

LevyTriplet gaussian_only(double sigma2) {
  return LevyTriplet(LevyMeasureSpec(LevyMeasureSpec::GaussianOnly{}), sigma2,
                     0.0);
}

LevyTriplet cp_atom(double intensity, double value) {
  return LevyTriplet(
      LevyMeasureSpec(LevyMeasureSpec::CompoundPoisson{
          intensity, JumpLaw(JumpLaw::TwoPoint{value, 1.0, value})}),
      0.0, 0.0);
}

}  // namespace

TEST_CASE("waterfill worked examples") {
  double e = std::exp(1.0);
  WaterfillResult a = waterfill({{{1.0, e}}}, 1.0);
  CHECK(a.lambda == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(a.value == doctest::Approx(1.0).epsilon(1e-9));

  WaterfillResult b = waterfill({{{1.0, 0.7}, {1.0, 0.7}}}, 0.0);
  CHECK(b.value == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(b.xi[0] == 0.0);
  CHECK(b.xi[1] == 0.0);

  WaterfillResult c = waterfill({{{1.0, 0.0}, {1.0, 4.0}}}, std::log(2.0));
  CHECK(c.lambda == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(c.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(c.xi[0] == 0.0);  // zero-payoff atom gets no rate

  CHECK_THROWS_AS(waterfill({{}}, 1.0), DomainError);
  CHECK_THROWS_AS(waterfill({{{1.0, 0.0}}}, 1.0), DomainError);
}

TEST_CASE("waterfill satisfies the budget identity") {
  Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    WeightedAtoms prob;
    int n = 1 + static_cast<int>(rng.next_u64() % 6);
    for (int i = 0; i < n; ++i)
      prob.atoms.emplace_back(0.5 + 1.5 * rng.uniform_half_open(),
                              3.0 * rng.uniform_half_open());
    bool some_positive = false;
    for (auto& [w, h] : prob.atoms) some_positive |= h > 0.0;
    if (!some_positive) prob.atoms.back().second = 1.0;
    double r = 2.0 * rng.uniform_half_open();
    WaterfillResult res = waterfill(prob, r);
    double spent = 0.0;
    for (std::size_t i = 0; i < prob.atoms.size(); ++i) {
      CHECK(res.xi[i] >= 0.0);
      spent += prob.atoms[i].first * res.xi[i];
    }
    CHECK(spent == doctest::Approx(r).epsilon(1e-9));
  }
}

TEST_CASE("bernoulli rate and its inverse") {
  double ln2 = std::log(2.0);
  CHECK(bernoulli_rate(0.5) == doctest::Approx(0.0));
  CHECK(bernoulli_rate(0.0) == doctest::Approx(ln2));
  CHECK(bernoulli_rate(0.25) == doctest::Approx(0.1308).epsilon(1e-3));
  CHECK(bernoulli_distortion(0.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(bernoulli_distortion(ln2) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(bernoulli_distortion(bernoulli_rate(0.25)) ==
        doctest::Approx(0.25).epsilon(1e-3));
  CHECK_THROWS_AS(bernoulli_rate(0.7), DomainError);
  CHECK_THROWS_AS(bernoulli_distortion(1.0), DomainError);
  // Strictly decreasing on a grid.
  double prev = bernoulli_rate(0.0);
  for (double d = 0.05; d <= 0.5; d += 0.05) {
    double cur = bernoulli_rate(d);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("F2 lower bound") {
  LowerBoundPoint a = lower_bound_f2(cp_atom(2.5, 10.0), 1.0, 1.0);
  CHECK(a.rate_nats == doctest::Approx(0.8 / std::exp(1.0) *
                                       2.5 * std::log(10.0)));
  CHECK(a.distortion_lb == doctest::Approx(0.8));
  CHECK_FALSE(a.degenerate);

  LowerBoundPoint b = lower_bound_f2(cp_atom(0.9, 10.0), 1.0, 1.0);
  CHECK(b.degenerate);
  CHECK(b.rate_nats == 0.0);
  CHECK(b.distortion_lb == 0.0);

  LowerBoundPoint c = lower_bound_f2(stable(1.0, 0.5, 0.5), 0.25, 1.0);
  CHECK(c.rate_nats == doctest::Approx(4.0 / std::exp(1.0)).epsilon(1e-12));
  CHECK(c.distortion_lb == doctest::Approx(0.25));
  CHECK_THROWS_AS(lower_bound_f2(gaussian_only(1.0), 0.1, 1.0), DomainError);
}

TEST_CASE("F1 lower bound") {
  // GaussianOnly sigma2=1, eps=0.05: F1(0.1)=100, n=5, q=(1/8)(1-45/100).
  double r0 = 0.3;
  LowerBoundPoint p = lower_bound_f1(gaussian_only(1.0), 0.05, r0, 1.0, 1.0);
  CHECK(p.rate_nats == doctest::Approx(5.0 * r0 / 8.0).epsilon(1e-12));
  double q = 0.125 * (1.0 - 45.0 / 100.0);
  CHECK(q == doctest::Approx(0.06875));
  double want = 0.05 / (4.0 * 5.0) * 5.0 * 2.0 * q *
                bernoulli_distortion(r0 / (16.0 * q));
  CHECK(p.distortion_lb == doctest::Approx(want).epsilon(1e-9));

  // q >= 1/16 whenever the hypothesis F1(2eps) >= 18 holds.
  for (double sigma2 : {1.0, 2.0, 5.0}) {
    for (double eps : {0.01, 0.05, 0.15}) {
      double f12 = sigma2 / (4.0 * eps * eps);
      if (f12 < 18.0) continue;
      double n = std::floor(f12 / 18.0);
      double qq = 0.125 * (1.0 - 9.0 * n / f12);
      CHECK(qq >= 1.0 / 16.0 - 1e-12);
    }
  }
  CHECK_THROWS_AS(lower_bound_f1(gaussian_only(1.0), 0.5, r0, 1.0, 1.0),
                  DomainError);
  CHECK_THROWS_AS(lower_bound_f1(gaussian_only(1.0), 0.05, 0.8, 1.0, 1.0),
                  DomainError);
  // r0 -> ln2 makes the bound vanish.
  LowerBoundPoint tiny =
      lower_bound_f1(gaussian_only(1.0), 0.05, std::log(2.0) - 1e-9, 1.0, 1.0);
  CHECK(tiny.distortion_lb <= 1e-4);
}

TEST_CASE("exit tail bound formula") {
  // F1(2 eps) = 100 at eps = 0.05 for sigma2 = 1.
  CHECK(exit_tail_bound(gaussian_only(1.0), 0.05, 1.0) ==
        doctest::Approx(0.0225).epsilon(1e-12));
  CHECK(exit_tail_bound(gaussian_only(1.0), 0.05, 1e9) ==
        doctest::Approx(0.0).epsilon(1e-6));
  CHECK(exit_tail_bound(gaussian_only(1.0), 0.5, 1.0) == 1.0);  // clamp
  CHECK_THROWS_AS(exit_tail_bound(gaussian_only(1.0), 0.05, 0.0), DomainError);
}

TEST_CASE("renewal log bound examples") {
  Rng rng(8080);
  RenewalResult half = renewal_log_bound(0.5, 5000, rng);
  CHECK(half.bound == 6.0);
  RenewalResult one = renewal_log_bound(1.0, 20000, rng);
  CHECK(one.bound == 12.0);
  CHECK(one.mc_estimate >= 2.0);
  CHECK(one.mc_estimate <= 12.0 + 3.0 * one.std_error);
  RenewalResult big = renewal_log_bound(20.0, 20000, rng);
  CHECK(big.bound == 240.0);
  CHECK(big.mc_estimate <= 240.0 + 3.0 * big.std_error);
  CHECK_THROWS_AS(renewal_log_bound(0.0, 10, rng), DomainError);
}
