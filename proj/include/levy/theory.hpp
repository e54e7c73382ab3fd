#pragma once

#include <vector>

#include "levy/measure.hpp"
#include "levy/rng.hpp"

namespace levy {

/// Finite measure with payoff values, the water-filling problem data.
struct WeightedAtoms {
  std::vector<std::pair<double, double>> atoms;  // (weight > 0, h >= 0)
};

struct WaterfillResult {
  double lambda = 0.0;
  std::vector<double> xi;  // optimal allocation log+(h_i / lambda)
  double value = 0.0;      // minimal sum w_i * (lambda ^ h_i)
};

// Solves min sum w_i * (payoff after allocating description length xi_i)
// subject to sum w_i xi_i <= r; the optimizer is xi_i = log+(h_i/lambda) with
// lambda found by bisection on g(lambda) = sum w_i log+(h_i/lambda) = r.
WaterfillResult waterfill(const WeightedAtoms& problem, double r);

// Rate of the Bernoulli(1/2) source under Hamming distortion d, in nats:
// d ln(2d) + (1-d) ln(2(1-d)), with the 0*ln 0 := 0 convention.
double bernoulli_rate(double d);
// Inverse of bernoulli_rate on [0, ln 2], by bisection.
double bernoulli_distortion(double r);

struct LowerBoundPoint {
  enum class Kind { F2Bound, F1Bound };
  double rate_nats = 0.0;
  double distortion_lb = 0.0;
  Kind kind = Kind::F2Bound;
  bool degenerate = false;  // tail mass < 1 makes the F2 bound trivial
};

// F2-based bound: rate = kappa/e * F2(eps), distortion >= c*kappa*eps, with
// kappa = floor(tail_mass)/tail_mass.  c is a caller-supplied constant.
LowerBoundPoint lower_bound_f2(const LevyTriplet& t, double eps, double c);

// F1-based bound via the Bernoulli reduction: n = floor(F1(2eps)/18),
// q = max(0, (1 - 9n/F1(2eps))/8) >= 1/16, rate = c_user * n * r0 / 8,
// distortion >= (eps/(4 n^{1/p})) * n * 2q * bernoulli_distortion(r0/(16q)).
LowerBoundPoint lower_bound_f1(const LevyTriplet& t, double eps, double r0,
                               double c_user, double p);

// min(1, 9 / (4 F1(2 eps) t)), the exit-time tail bound.
double exit_tail_bound(const LevyTriplet& t, double eps, double time);

struct RenewalResult {
  double bound = 0.0;        // 6 * ceil(2 lambda)
  double mc_estimate = 0.0;  // Monte-Carlo mean of sum_{i<=N} (1 + ln 1/U_i)
  double std_error = 0.0;
};

// N = min{n : U_1 + ... + U_n >= lambda} for i.i.d. uniforms; estimates
// E sum_{i<=N}(1 + ln 1/U_i) and reports it next to the 6*ceil(2 lambda) bound.
RenewalResult renewal_log_bound(double lambda, long long trials, Rng& rng);

}  // namespace levy
