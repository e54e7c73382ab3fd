#include "levy/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "levy/errors.hpp"

namespace levy {

namespace {

bool is_dyadic(double h) {
  if (!(h > 0.0) || h > 1.0) return false;
  int exp = 0;
  double mant = std::frexp(h, &exp);
  return mant == 0.5;  // h = 2^{exp-1}
}

}  // namespace

CadlagPath simulate(const LevyTriplet& triplet, const SimConfig& cfg,
                    double eps_min) {
  if (!is_dyadic(cfg.grid_step))
    throw DomainError("simulate: grid_step must be a dyadic in (0,1]");
  if (!(cfg.small_jump_cutoff_ratio > 0.0 && cfg.small_jump_cutoff_ratio <= 1.0))
    throw DomainError("simulate: cutoff ratio must lie in (0,1]");
  if (!(eps_min > 0.0)) throw DomainError("simulate: eps_min must be > 0");

  const double delta = cfg.small_jump_cutoff_ratio * eps_min;
  Rng rng(cfg.seed);

  // Exact jumps beyond the cutoff.
  std::vector<CadlagPath::Event> events;
  if (!triplet.measure.is_gaussian_only()) {
    const double lambda = tail_mass(triplet, delta);
    if (lambda > 1e8)
      throw ResolutionError("simulate: expected jump count exceeds 1e8");
    const long long n = rng.poisson(lambda);
    events.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      double t = rng.uniform_half_open();
      double x = sample_jump_above(triplet, delta, rng);
      events.push_back({t, x});
    }
  }

  // Brownian part plus Gaussian substitute for the sub-cutoff martingale,
  // as increments at interior grid times.
  const double var_rate = triplet.sigma2 + small_jump_variance(triplet, delta);
  if (var_rate > 0.0) {
    const double sd = std::sqrt(var_rate * cfg.grid_step);
    const long long steps = static_cast<long long>(std::llround(1.0 / cfg.grid_step));
    for (long long k = 1; k < steps; ++k)
      events.push_back({k * cfg.grid_step, sd * rng.normal()});
  }

  std::sort(events.begin(), events.end(),
            [](const CadlagPath::Event& a, const CadlagPath::Event& b) {
              return a.time < b.time;
            });
  // Merge coincident times so event times stay strictly increasing.
  std::vector<CadlagPath::Event> merged;
  merged.reserve(events.size());
  for (const auto& e : events) {
    if (!merged.empty() && merged.back().time == e.time)
      merged.back().increment += e.increment;
    else
      merged.push_back(e);
  }

  // Compensate the drift for the uncompensated jumps above the cutoff.
  const double drift = drift_compensation(triplet, delta);
  return CadlagPath(std::move(merged), drift, cfg.grid_step);
}

}  // namespace levy
