#include "levy/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "levy/errors.hpp"

namespace levy {

CadlagPath::CadlagPath(std::vector<Event> events, double drift_rate,
                       double grid_step)
    : events_(std::move(events)), drift_rate_(drift_rate), grid_step_(grid_step) {
  if (!(grid_step_ > 0.0)) throw DomainError("CadlagPath: grid_step must be > 0");
  double prev = -1.0;
  for (const auto& e : events_) {
    if (!(e.time >= 0.0 && e.time < 1.0))
      throw DomainError("CadlagPath: event time outside [0,1)");
    if (!(e.time > prev))
      throw DomainError("CadlagPath: event times must be strictly increasing");
    prev = e.time;
  }
  cum_.resize(events_.size() + 1);
  cum_[0] = 0.0;
  for (std::size_t i = 0; i < events_.size(); ++i)
    cum_[i + 1] = cum_[i] + events_[i].increment;
}

double CadlagPath::value_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("value_at: t outside [0,1]");
  // Number of events with time <= t.
  auto it = std::upper_bound(
      events_.begin(), events_.end(), t,
      [](double v, const Event& e) { return v < e.time; });
  return drift_rate_ * t + cum_[static_cast<std::size_t>(it - events_.begin())];
}

std::string CadlagPath::to_csv() const {
  std::ostringstream out;
  char buf[64];
  out << "drift_rate,grid_step\n";
  std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", drift_rate_, grid_step_);
  out << buf;
  out << "time,increment\n";
  for (const auto& e : events_) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e.time, e.increment);
    out << buf;
  }
  return out.str();
}

CadlagPath CadlagPath::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw MalformedStream(std::string("path CSV: missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  if (next_line("header") != "drift_rate,grid_step")
    throw MalformedStream("path CSV: bad header line");
  double drift = 0.0, step = 0.0;
  if (std::sscanf(next_line("drift row").c_str(), "%lf,%lf", &drift, &step) != 2)
    throw MalformedStream("path CSV: bad drift/grid row");
  if (next_line("column header") != "time,increment")
    throw MalformedStream("path CSV: bad column header");
  std::vector<Event> events;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Event e{};
    if (std::sscanf(line.c_str(), "%lf,%lf", &e.time, &e.increment) != 2)
      throw MalformedStream("path CSV: bad event row: " + line);
    events.push_back(e);
  }
  // The constructor revalidates sortedness and ranges.
  return CadlagPath(std::move(events), drift, step);
}

namespace {

// Antiderivative of |x|^p: F(x) = sgn(x) |x|^{p+1} / (p+1).
double signed_pow_int(double x, double p) {
  return std::copysign(std::pow(std::abs(x), p + 1.0), x) / (p + 1.0);
}

// \int_0^len |c + d s|^p ds.
double cell_integral(double c, double d, double len, double p) {
  if (len <= 0.0) return 0.0;
  if (d == 0.0) return std::pow(std::abs(c), p) * len;
  return (signed_pow_int(c + d * len, p) - signed_pow_int(c, p)) / d;
}

}  // namespace

double lp_distance(const CadlagPath& a, const CadlagPath& b, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_distance: p must be >= 1");
  const auto& ea = a.events();
  const auto& eb = b.events();
  const double d = a.drift_rate() - b.drift_rate();

  double total = 0.0;
  double t = 0.0;
  double diff = 0.0;  // (a - b) just after time t, excluding drift from t on
  std::size_t ia = 0, ib = 0;
  // Apply any events at exactly t = 0 before the first cell.
  while (ia < ea.size() && ea[ia].time == 0.0) diff += ea[ia++].increment;
  while (ib < eb.size() && eb[ib].time == 0.0) diff -= eb[ib++].increment;
  while (t < 1.0) {
    double tn = 1.0;
    if (ia < ea.size()) tn = std::min(tn, ea[ia].time);
    if (ib < eb.size()) tn = std::min(tn, eb[ib].time);
    total += cell_integral(diff, d, tn - t, p);
    diff += d * (tn - t);
    t = tn;
    while (ia < ea.size() && ea[ia].time == t) diff += ea[ia++].increment;
    while (ib < eb.size() && eb[ib].time == t) diff -= eb[ib++].increment;
  }
  return std::pow(total, 1.0 / p);
}

}  // namespace levy
