#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levy/codec.hpp"
#include "levy/measure.hpp"
#include "levy/simulate.hpp"
#include "levy/theory.hpp"

namespace levy {

enum class Mode { Entropy, Quantization };

struct ExperimentConfig {
  LevyTriplet triplet;
  std::vector<double> eps_grid;  // sorted descending
  int replicas = 1;
  double p = 1.0;
  SimConfig sim;
  Mode mode = Mode::Entropy;
  double c1 = 8.0;  // truncation caps, quantization mode only
  double c2 = 8.0;
  int threads = 0;  // 0 = hardware concurrency
};

struct TrialResult {
  std::uint64_t bits = 0;
  double error_lp = 0.0;
  bool certificate_ok = false;
  bool truncated = false;
};

struct RDPoint {
  double eps = 0.0;
  double mean_bits = 0.0;
  double max_bits = 0.0;
  double mean_error_lp = 0.0;
  double max_error_lp = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f_total = 0.0;
  int replicas = 0;
  double tol = 0.0;  // sim_tolerance(grid_step)
  long long truncated_count = 0;
  long long certificate_failures = 0;
};

// Builds the codec parameters the harness uses for a triplet at eps:
// b_eps = drift_compensation, m = F1(eps) (or 1 for the zero process).
CodecParams harness_params(const LevyTriplet& t, double eps, double p,
                           Mode mode, double c1, double c2);

// simulate -> encode -> decode -> L^p distance, with the per-path
// certificate (bit bound and 3*eps distortion bound).
TrialResult roundtrip_trial(const LevyTriplet& t, double eps,
                            const SimConfig& sim, double p, Mode mode,
                            double c1, double c2, std::uint64_t stream_seed,
                            double eps_min);

// Monte-Carlo sweep over the eps grid; replicas run on pre-derived RNG
// streams and are folded in index order, so output is deterministic under
// any thread count.  Throws if more than 1% of replicas fail.
std::vector<RDPoint> sweep(const ExperimentConfig& cfg);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares of ln(y) on ln(x); needs >= 3 points, positive coordinates.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points);

struct TheoryRow {
  double eps = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f_total = 0.0;
  std::optional<LowerBoundPoint> f2_bound;  // absent when tail mass is 0 or F2 = inf
  std::optional<LowerBoundPoint> f1_bound;  // absent when F1(2 eps) < 18
};

struct TheoryParams {
  double c = 1.0;       // F2-bound constant
  double r0 = 0.3;      // F1-bound per-letter rate, in (0, ln 2)
  double c_user = 1.0;  // F1-bound reporting constant
  double p = 1.0;
};

std::vector<TheoryRow> theory_curves(const LevyTriplet& t,
                                     const std::vector<double>& eps_grid,
                                     const TheoryParams& params);

// CSV writers; floats printed with 17 significant digits.
std::string rd_points_to_csv(const std::vector<RDPoint>& points);
std::vector<RDPoint> rd_points_from_csv(const std::string& text);
std::string theory_rows_to_csv(const std::vector<TheoryRow>& rows);

// Experiment configuration as JSON (schema documented in the README).
ExperimentConfig config_from_json(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace levy
