#include "levy/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levy/errors.hpp"

namespace levy {

namespace {

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace

WaterfillResult waterfill(const WeightedAtoms& problem, double r) {
  if (!(r >= 0.0)) throw DomainError("waterfill: r must be >= 0");
  if (problem.atoms.empty()) throw DomainError("waterfill: empty problem");
  double h_max = 0.0, h_min_pos = std::numeric_limits<double>::infinity();
  double w_min = std::numeric_limits<double>::infinity();
  for (const auto& [w, h] : problem.atoms) {
    if (!(w > 0.0)) throw DomainError("waterfill: weights must be > 0");
    if (h < 0.0) throw DomainError("waterfill: payoffs must be >= 0");
    h_max = std::max(h_max, h);
    if (h > 0.0) h_min_pos = std::min(h_min_pos, h);
    w_min = std::min(w_min, w);
  }
  if (h_max <= 0.0) throw DomainError("waterfill: all payoffs are zero");

  auto g = [&](double lambda) {
    double s = 0.0;
    for (const auto& [w, h] : problem.atoms) s += w * log_plus(h / lambda);
    return s;
  };

  // g is continuous and decreasing, g(h_max) = 0, g(lambda) -> inf as
  // lambda -> 0.  Bracket: the smallest positive payoff alone already spends
  // rate r at the lower endpoint.
  double lo = h_min_pos * std::exp(-r / w_min);
  double hi = h_max;
  double lambda = hi;
  if (r > 0.0) {
    const double tol = 1e-9 * std::max(1.0, r);
    for (int i = 0; i < 200; ++i) {
      lambda = 0.5 * (lo + hi);
      double val = g(lambda);
      if (std::abs(val - r) <= tol) break;
      (val > r ? lo : hi) = lambda;
    }
  }

  WaterfillResult out;
  out.lambda = lambda;
  out.xi.reserve(problem.atoms.size());
  for (const auto& [w, h] : problem.atoms) {
    out.xi.push_back(log_plus(h / lambda));
    out.value += w * std::min(lambda, h);
  }
  return out;
}

double bernoulli_rate(double d) {
  if (!(d >= 0.0 && d <= 0.5)) throw DomainError("bernoulli_rate: d outside [0,1/2]");
  auto term = [](double x) { return x > 0.0 ? x * std::log(2.0 * x) : 0.0; };
  return term(d) + term(1.0 - d);
}

double bernoulli_distortion(double r) {
  const double ln2 = std::log(2.0);
  if (!(r >= 0.0 && r <= ln2))
    throw DomainError("bernoulli_distortion: r outside [0, ln 2]");
  double lo = 0.0, hi = 0.5;  // rate decreases from ln2 at d=0 to 0 at d=1/2
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-12) break;
    (bernoulli_rate(mid) > r ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

LowerBoundPoint lower_bound_f2(const LevyTriplet& t, double eps, double c) {
  if (!(c > 0.0)) throw DomainError("lower_bound_f2: c must be > 0");
  double tail = tail_mass(t, eps);
  if (!(tail > 0.0)) throw DomainError("lower_bound_f2: tail mass is zero");
  double f2_val = f2(t, eps);
  if (!std::isfinite(f2_val)) throw DomainError("lower_bound_f2: F2 infinite");
  double kappa = std::floor(tail) / tail;
  LowerBoundPoint out;
  out.kind = LowerBoundPoint::Kind::F2Bound;
  out.rate_nats = kappa / std::exp(1.0) * f2_val;
  out.distortion_lb = c * kappa * eps;
  out.degenerate = kappa == 0.0;
  return out;
}

LowerBoundPoint lower_bound_f1(const LevyTriplet& t, double eps, double r0,
                               double c_user, double p) {
  const double ln2 = std::log(2.0);
  if (!(r0 > 0.0 && r0 < ln2))
    throw DomainError("lower_bound_f1: r0 must lie in (0, ln 2)");
  if (!(c_user > 0.0)) throw DomainError("lower_bound_f1: c_user must be > 0");
  if (!(p >= 1.0)) throw DomainError("lower_bound_f1: p must be >= 1");
  double f1_2eps = f1(t, 2.0 * eps);
  if (!(f1_2eps >= 18.0))
    throw DomainError("lower_bound_f1: requires F1(2 eps) >= 18");
  double n = std::floor(f1_2eps / 18.0);
  double q = std::max(0.0, 0.125 * (1.0 - 9.0 * n / f1_2eps));  // >= 1/16
  LowerBoundPoint out;
  out.kind = LowerBoundPoint::Kind::F1Bound;
  out.rate_nats = c_user * n * r0 / 8.0;
  out.distortion_lb = eps / (4.0 * std::pow(n, 1.0 / p)) * n * 2.0 * q *
                      bernoulli_distortion(r0 / (16.0 * q));
  return out;
}

double exit_tail_bound(const LevyTriplet& t, double eps, double time) {
  if (!(time > 0.0)) throw DomainError("exit_tail_bound: t must be > 0");
  double f1_2eps = f1(t, 2.0 * eps);
  if (!(f1_2eps > 0.0)) throw DomainError("exit_tail_bound: F1(2 eps) is zero");
  return std::min(1.0, 9.0 / (4.0 * f1_2eps * time));
}

RenewalResult renewal_log_bound(double lambda, long long trials, Rng& rng) {
  if (!(lambda > 0.0)) throw DomainError("renewal_log_bound: lambda must be > 0");
  if (trials < 1) throw DomainError("renewal_log_bound: trials must be >= 1");
  double sum = 0.0, sum_sq = 0.0;
  for (long long k = 0; k < trials; ++k) {
    double acc = 0.0, cost = 0.0;
    while (acc < lambda) {
      double u = rng.uniform01();
      acc += u;
      cost += 1.0 - std::log(u);
    }
    sum += cost;
    sum_sq += cost * cost;
  }
  RenewalResult out;
  out.bound = 6.0 * std::ceil(2.0 * lambda);
  out.mc_estimate = sum / static_cast<double>(trials);
  double var = std::max(0.0, sum_sq / trials - out.mc_estimate * out.mc_estimate);
  out.std_error = std::sqrt(var / static_cast<double>(trials));
  return out;
}

}  // namespace levy
