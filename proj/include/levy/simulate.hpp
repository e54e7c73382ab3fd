#pragma once

#include <cstdint>

#include "levy/measure.hpp"
#include "levy/path.hpp"

namespace levy {

struct SimConfig {
  double grid_step = 0x1p-14;            // dyadic step of the diffusive skeleton
  double small_jump_cutoff_ratio = 0.01;  // cutoff delta = ratio * eps_min
  std::uint64_t seed = 0;
};

// Samples one path of the triplet on [0,1]: jumps with |x| > delta exactly,
// everything below delta (plus the Brownian part) as Gaussian grid increments
// of matching variance.  Deterministic given cfg.seed.
CadlagPath simulate(const LevyTriplet& triplet, const SimConfig& cfg,
                    double eps_min);

// Simulation tolerance reported next to every distortion statistic.
inline double sim_tolerance(double grid_step) { return std::sqrt(grid_step); }

}  // namespace levy
