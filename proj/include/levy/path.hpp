#pragma once

#include <string>
#include <vector>

namespace levy {

/// Piecewise-constant càdlàg skeleton on [0,1]: jumps at event times plus a
/// linear drift.  Value at t is drift_rate*t + sum of increments with time <= t;
/// the process starts at 0.
class CadlagPath {
 public:
  struct Event {
    double time;       // in [0, 1)
    double increment;  // jump size at `time`
  };

  CadlagPath(std::vector<Event> events, double drift_rate, double grid_step);

  const std::vector<Event>& events() const { return events_; }
  double drift_rate() const { return drift_rate_; }
  double grid_step() const { return grid_step_; }

  // Right-continuous evaluation at t in [0,1].
  double value_at(double t) const;

  // Value just after the k-th event (prefix of increments through index k).
  double value_after_event(std::size_t k) const { return cum_[k + 1]; }

  std::string to_csv() const;
  static CadlagPath from_csv(const std::string& text);

 private:
  std::vector<Event> events_;
  std::vector<double> cum_;  // cum_[k] = sum of first k increments
  double drift_rate_ = 0.0;
  double grid_step_ = 0.0;
};

// Exact L^p[0,1] distance between two piecewise-constant-plus-drift paths,
// integrated in closed form cell by cell over the merged breakpoints.
double lp_distance(const CadlagPath& a, const CadlagPath& b, double p);

}  // namespace levy
