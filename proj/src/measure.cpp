#include "levy/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levy/errors.hpp"
#include "levy/quadrature.hpp"
#include "json.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2e = 1.4426950408889634;  // 1/ln 2

double sq(double x) { return x * x; }

}  // namespace

// ---------------------------------------------------------------------------
// JumpLaw
// ---------------------------------------------------------------------------

JumpLaw::JumpLaw(Variant v) : v_(std::move(v)) {
  std::visit(
      [](const auto& law) {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, TwoPoint>) {
          if (law.prob_a < 0.0 || law.prob_a > 1.0)
            throw DomainError("TwoPoint: prob_a must lie in [0,1]");
          if (law.a == 0.0 || law.b == 0.0)
            throw DomainError("TwoPoint: atoms must be nonzero");
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (!(law.mean > 0.0)) throw DomainError("Exponential: mean must be > 0");
          if (law.sign != 1 && law.sign != -1)
            throw DomainError("Exponential: sign must be +1 or -1");
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          if (!(law.sd > 0.0)) throw DomainError("NormalLaw: sd must be > 0");
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          if (law.atoms.empty()) throw DomainError("Tabulated: empty atom list");
          double total = 0.0;
          for (const auto& [value, weight] : law.atoms) {
            if (value == 0.0) throw DomainError("Tabulated: atom at 0");
            if (!(weight > 0.0)) throw DomainError("Tabulated: weight must be > 0");
            total += weight;
          }
          if (std::abs(total - 1.0) > 1e-12)
            throw DomainError("Tabulated: weights must sum to 1");
        }
      },
      v_);
}

bool JumpLaw::has_density() const {
  return std::holds_alternative<Exponential>(v_) || std::holds_alternative<NormalLaw>(v_);
}

namespace {

using Atom = std::pair<double, double>;

std::vector<Atom> atoms_of(const JumpLaw::Variant& v) {
  if (const auto* tp = std::get_if<JumpLaw::TwoPoint>(&v))
    return {{tp->a, tp->prob_a}, {tp->b, 1.0 - tp->prob_a}};
  return std::get<JumpLaw::Tabulated>(v).atoms;
}

double normal_pdf(double x, double mean, double sd) {
  double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
}

double normal_upper_tail(double a, double mean, double sd) {
  return 0.5 * std::erfc((a - mean) / (sd * M_SQRT2));
}

// \int over {|y| > a} of g(y) dP for the normal law.
double normal_expect_tail(const JumpLaw::NormalLaw& n, double a,
                          const std::function<double(double)>& g) {
  auto pos = [&](double x) { return g(x) * normal_pdf(x, n.mean, n.sd); };
  auto neg = [&](double x) { return g(-x) * normal_pdf(-x, n.mean, n.sd); };
  return integrate_tail(pos, a) + integrate_tail(neg, a);
}

}  // namespace

double JumpLaw::mass_above(double eps) const {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return std::exp(-eps / law.mean);
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          return normal_upper_tail(eps, law.mean, law.sd) +
                 normal_upper_tail(eps, -law.mean, law.sd);
        } else {
          double s = 0.0;
          for (const auto& [v, w] : atoms_of(v_))
            if (std::abs(v) > eps) s += w;
          return s;
        }
      },
      v_);
}

double JumpLaw::second_moment_below(double d) const {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          double t = d / law.mean;
          return sq(law.mean) * (2.0 - std::exp(-t) * (t * t + 2.0 * t + 2.0));
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          if (d <= 0.0) return 0.0;
          auto f = [&](double x) { return x * x * normal_pdf(x, law.mean, law.sd); };
          return integrate(f, -d, 0.0) + integrate(f, 0.0, d);
        } else {
          double s = 0.0;
          for (const auto& [v, w] : atoms_of(v_))
            if (std::abs(v) <= d) s += w * v * v;
          return s;
        }
      },
      v_);
}

double JumpLaw::second_moment_capped(double eps) const {
  return second_moment_below(eps) + eps * eps * mass_above(eps);
}

double JumpLaw::log_tail(double eps) const {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return expint_e1(eps / law.mean);
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          return normal_expect_tail(law, eps,
                                    [&](double y) { return std::log(std::abs(y) / eps); });
        } else {
          double s = 0.0;
          for (const auto& [v, w] : atoms_of(v_))
            if (std::abs(v) > eps) s += w * std::log(std::abs(v) / eps);
          return s;
        }
      },
      v_);
}

double JumpLaw::pow_tail(double mu, double eps) const {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          auto f = [&](double x) {
            return std::pow(x / eps, mu) * std::exp(-x / law.mean) / law.mean;
          };
          return integrate_tail(f, eps);
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          return normal_expect_tail(
              law, eps, [&](double y) { return std::pow(std::abs(y) / eps, mu); });
        } else {
          double s = 0.0;
          for (const auto& [v, w] : atoms_of(v_))
            if (std::abs(v) > eps) s += w * std::pow(std::abs(v) / eps, mu);
          return s;
        }
      },
      v_);
}

double JumpLaw::abs_moment_above(double q, double t) const {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          auto f = [&](double x) {
            return std::pow(x, q) * std::exp(-x / law.mean) / law.mean;
          };
          return integrate_tail(f, t);
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          return normal_expect_tail(law, t,
                                    [&](double y) { return std::pow(std::abs(y), q); });
        } else {
          double s = 0.0;
          for (const auto& [v, w] : atoms_of(v_))
            if (std::abs(v) > t) s += w * std::pow(std::abs(v), q);
          return s;
        }
      },
      v_);
}

double JumpLaw::mean_in_band(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          double m = law.mean;
          double a = lo / m, b = hi / m;
          double val = m * ((1.0 + a) * std::exp(-a) - (1.0 + b) * std::exp(-b));
          return law.sign * val;
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          auto f = [&](double x) { return x * normal_pdf(x, law.mean, law.sd); };
          return integrate(f, lo, hi) + integrate(f, -hi, -lo);
        } else {
          double s = 0.0;
          for (const auto& [v, w] : atoms_of(v_))
            if (std::abs(v) > lo && std::abs(v) <= hi) s += w * v;
          return s;
        }
      },
      v_);
}

double JumpLaw::sample(Rng& rng) const {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return law.sign * (-law.mean * std::log(rng.uniform01()));
        } else if constexpr (std::is_same_v<T, NormalLaw>) {
          return law.mean + law.sd * rng.normal();
        } else {
          double u = rng.uniform_half_open();
          double acc = 0.0;
          auto atoms = atoms_of(v_);
          for (const auto& [v, w] : atoms) {
            acc += w;
            if (u < acc) return v;
          }
          return atoms.back().first;
        }
      },
      v_);
}

double JumpLaw::sample_above(double delta, Rng& rng) const {
  if (const auto* e = std::get_if<Exponential>(&v_)) {
    // Memorylessness: |Y| given |Y| > delta is delta + Exp(mean).
    return e->sign * (delta - e->mean * std::log(rng.uniform01()));
  }
  if (!has_density()) {
    auto atoms = atoms_of(v_);
    double total = 0.0;
    for (const auto& [v, w] : atoms)
      if (std::abs(v) > delta) total += w;
    if (total <= 0.0) throw DomainError("sample_above: no mass beyond cutoff");
    double u = rng.uniform_half_open() * total;
    double acc = 0.0;
    for (const auto& [v, w] : atoms) {
      if (std::abs(v) <= delta) continue;
      acc += w;
      if (u < acc) return v;
    }
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it)
      if (std::abs(it->first) > delta) return it->first;
    throw DomainError("sample_above: unreachable");
  }
  // Rejection; acceptance probability is mass_above(delta), which is close
  // to 1 for the cutoffs the simulator uses.
  for (int i = 0; i < 100000; ++i) {
    double y = sample(rng);
    if (std::abs(y) > delta) return y;
  }
  throw ResolutionError("sample_above: rejection sampling stalled");
}

// ---------------------------------------------------------------------------
// LevyMeasureSpec / LevyTriplet
// ---------------------------------------------------------------------------

LevyMeasureSpec::LevyMeasureSpec(Variant v) : v_(std::move(v)) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          if (!(m.alpha > 0.0 && m.alpha < 2.0))
            throw DomainError("Stable: alpha must lie in (0,2)");
          if (m.c_minus < 0.0 || m.c_plus < 0.0 || m.c_minus + m.c_plus <= 0.0)
            throw DomainError("Stable: need c_minus,c_plus >= 0 with positive sum");
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          if (!(m.intensity > 0.0) || !std::isfinite(m.intensity))
            throw DomainError("CompoundPoisson: intensity must be finite and > 0");
          // \int 1 ^ x^2 nu(dx) <= intensity, finite by construction; checked
          // explicitly for tabulated laws.
          double check = m.intensity * m.law.second_moment_capped(1.0);
          if (!std::isfinite(check))
            throw DomainError("CompoundPoisson: 1^x^2 integral diverges");
        }
      },
      v_);
}

bool LevyMeasureSpec::is_gaussian_only() const {
  return std::holds_alternative<GaussianOnly>(v_);
}

LevyTriplet::LevyTriplet(LevyMeasureSpec m, double s2, double drift)
    : measure(std::move(m)), sigma2(s2), b(drift) {
  if (sigma2 < 0.0) throw DomainError("LevyTriplet: sigma2 must be >= 0");
}

// ---------------------------------------------------------------------------
// Density view for the numeric route
// ---------------------------------------------------------------------------

namespace {

using Stable = LevyMeasureSpec::Stable;
using GammaStandard = LevyMeasureSpec::GammaStandard;
using CompoundPoisson = LevyMeasureSpec::CompoundPoisson;
using GaussianOnly = LevyMeasureSpec::GaussianOnly;

// Lévy density on each half-axis as a function of |x|, when one exists.
struct SideDensities {
  std::function<double(double)> pos;
  std::function<double(double)> neg;
  bool available = false;
};

SideDensities side_densities(const LevyMeasureSpec& m) {
  SideDensities d;
  if (const auto* s = std::get_if<Stable>(&m.variant())) {
    double cm = s->c_minus, cp = s->c_plus, a = s->alpha;
    d.pos = [cp, a](double x) { return cp * std::pow(x, -a - 1.0); };
    d.neg = [cm, a](double x) { return cm * std::pow(x, -a - 1.0); };
    d.available = true;
  } else if (std::get_if<GammaStandard>(&m.variant())) {
    d.pos = [](double x) { return std::exp(-x) / x; };
    d.neg = [](double) { return 0.0; };
    d.available = true;
  } else if (const auto* cp = std::get_if<CompoundPoisson>(&m.variant())) {
    if (const auto* e = std::get_if<JumpLaw::Exponential>(&cp->law.variant())) {
      double lam = cp->intensity, mean = e->mean;
      auto density = [lam, mean](double x) {
        return lam * std::exp(-x / mean) / mean;
      };
      auto zero = [](double) { return 0.0; };
      if (e->sign > 0) {
        d.pos = density;
        d.neg = zero;
      } else {
        d.pos = zero;
        d.neg = density;
      }
      d.available = true;
    } else if (const auto* n = std::get_if<JumpLaw::NormalLaw>(&cp->law.variant())) {
      double lam = cp->intensity, mean = n->mean, sd = n->sd;
      d.pos = [lam, mean, sd](double x) { return lam * normal_pdf(x, mean, sd); };
      d.neg = [lam, mean, sd](double x) { return lam * normal_pdf(-x, mean, sd); };
      d.available = true;
    }
  }
  return d;
}

double tail_mass_numeric(const SideDensities& d, double eps) {
  return integrate_tail(d.pos, eps) + integrate_tail(d.neg, eps);
}

double f1_numeric(const LevyTriplet& t, const SideDensities& d, double eps) {
  auto inner = [&](double x) { return x * x * (d.pos(x) + d.neg(x)); };
  double small = integrate(inner, 0.0, eps);
  return (t.sigma2 + small) / (eps * eps) + tail_mass_numeric(d, eps);
}

double f2_numeric(const SideDensities& d, double eps) {
  auto f = [&](double x) { return std::log(x / eps) * (d.pos(x) + d.neg(x)); };
  return integrate_tail(f, eps);
}

double drift_comp_numeric(const LevyTriplet& t, const SideDensities& d, double eps) {
  auto signed_mean = [&](double lo, double hi) {
    if (hi <= lo) return 0.0;
    return integrate([&](double x) { return x * (d.pos(x) - d.neg(x)); }, lo, hi);
  };
  if (eps <= 1.0) return t.b - signed_mean(eps, 1.0);
  return t.b + signed_mean(1.0, eps);
}

}  // namespace

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

double tail_mass(const LevyTriplet& t, double eps, EvalMethod method) {
  if (!(eps > 0.0)) throw DomainError("tail_mass: eps must be > 0");
  if (method == EvalMethod::Quadrature) {
    SideDensities d = side_densities(t.measure);
    if (d.available) return tail_mass_numeric(d, eps);
  }
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          return (m.c_minus + m.c_plus) * std::pow(eps, -m.alpha) / m.alpha;
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          return expint_e1(eps);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return m.intensity * m.law.mass_above(eps);
        } else {
          return 0.0;
        }
      },
      t.measure.variant());
}

double f1(const LevyTriplet& t, double eps, EvalMethod method) {
  if (!(eps > 0.0)) throw DomainError("f1: eps must be > 0");
  if (method == EvalMethod::Quadrature) {
    SideDensities d = side_densities(t.measure);
    if (d.available) return f1_numeric(t, d, eps);
  }
  double e2 = eps * eps;
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          double c = m.c_minus + m.c_plus;
          return t.sigma2 / e2 +
                 c * std::pow(eps, -m.alpha) * (1.0 / (2.0 - m.alpha) + 1.0 / m.alpha);
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          double small = 1.0 - (1.0 + eps) * std::exp(-eps);  // \int_0^eps x e^{-x}
          return (t.sigma2 + small) / e2 + expint_e1(eps);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return (t.sigma2 + m.intensity * m.law.second_moment_capped(eps)) / e2;
        } else {
          return t.sigma2 / e2;
        }
      },
      t.measure.variant());
}

double f2(const LevyTriplet& t, double eps, EvalMethod method) {
  if (!(eps > 0.0)) throw DomainError("f2: eps must be > 0");
  if (method == EvalMethod::Quadrature) {
    SideDensities d = side_densities(t.measure);
    if (d.available) return f2_numeric(d, eps);
  }
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          return (m.c_minus + m.c_plus) * std::pow(eps, -m.alpha) / (m.alpha * m.alpha);
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          auto f = [&](double x) { return std::log(x / eps) * std::exp(-x) / x; };
          return integrate_tail(f, eps);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return m.intensity * m.law.log_tail(eps);
        } else {
          return 0.0;
        }
      },
      t.measure.variant());
}

double f2_bits(const LevyTriplet& t, double eps, EvalMethod method) {
  return f2(t, eps, method) * kLog2e;
}

double f_total(const LevyTriplet& t, double eps, EvalMethod method) {
  return f1(t, eps, method) + f2(t, eps, method);
}

double f_total_bits(const LevyTriplet& t, double eps, EvalMethod method) {
  return f1(t, eps, method) + f2_bits(t, eps, method);
}

double drift_compensation(const LevyTriplet& t, double eps, EvalMethod method) {
  if (!(eps > 0.0)) throw DomainError("drift_compensation: eps must be > 0");
  if (method == EvalMethod::Quadrature) {
    SideDensities d = side_densities(t.measure);
    if (d.available) return drift_comp_numeric(t, d, eps);
  }
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          double lo = std::min(eps, 1.0), hi = std::max(eps, 1.0);
          double band;  // \int_lo^hi x * x^{-alpha-1} dx, per side
          if (m.alpha == 1.0)
            band = std::log(hi / lo);
          else
            band = (std::pow(hi, 1.0 - m.alpha) - std::pow(lo, 1.0 - m.alpha)) /
                   (1.0 - m.alpha);
          double signed_band = (m.c_plus - m.c_minus) * band;
          return eps <= 1.0 ? t.b - signed_band : t.b + signed_band;
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          // Both eps<=1 and eps>1 collapse to the same expression.
          return t.b - std::exp(-eps) + std::exp(-1.0);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          if (eps <= 1.0) return t.b - m.intensity * m.law.mean_in_band(eps, 1.0);
          return t.b + m.intensity * m.law.mean_in_band(1.0, eps);
        } else {
          return t.b;
        }
      },
      t.measure.variant());
}

double moment_diag(const LevyTriplet& t, double q) {
  if (!(q > 0.0)) throw DomainError("moment_diag: q must be > 0");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          if (q >= m.alpha) return kInf;
          return (m.c_minus + m.c_plus) / (m.alpha - q);
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          auto f = [&](double x) { return std::pow(x, q - 1.0) * std::exp(-x); };
          return integrate_tail(f, 1.0);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return m.intensity * m.law.abs_moment_above(q, 1.0);
        } else {
          return 0.0;
        }
      },
      t.measure.variant());
}

double condition_b_ratio(const LevyTriplet& t, double mu, double eps) {
  if (!(mu > 0.0)) throw DomainError("condition_b_ratio: mu must be > 0");
  double mass = tail_mass(t, eps);
  if (mass <= 0.0)
    throw DomainError("condition_b_ratio: tail mass is zero at this eps");
  double numer = std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          if (mu >= m.alpha) return kInf;
          return (m.c_minus + m.c_plus) * std::pow(eps, -m.alpha) / (m.alpha - mu);
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          auto f = [&](double x) {
            return std::pow(x / eps, mu) * std::exp(-x) / x;
          };
          return integrate_tail(f, eps);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return m.intensity * m.law.pow_tail(mu, eps);
        } else {
          return 0.0;
        }
      },
      t.measure.variant());
  return numer / mass;
}

double small_jump_variance(const LevyTriplet& t, double delta) {
  if (!(delta > 0.0)) throw DomainError("small_jump_variance: delta must be > 0");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          return (m.c_minus + m.c_plus) * std::pow(delta, 2.0 - m.alpha) /
                 (2.0 - m.alpha);
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          return 1.0 - (1.0 + delta) * std::exp(-delta);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return m.intensity * m.law.second_moment_below(delta);
        } else {
          return 0.0;
        }
      },
      t.measure.variant());
}

double sample_jump_above(const LevyTriplet& t, double delta, Rng& rng) {
  if (!(delta > 0.0)) throw DomainError("sample_jump_above: delta must be > 0");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Stable>) {
          double total = m.c_minus + m.c_plus;
          bool positive = rng.uniform_half_open() * total < m.c_plus;
          double mag = delta * std::pow(rng.uniform01(), -1.0 / m.alpha);
          return positive ? mag : -mag;
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          // Invert the tail mass E1 by bisection.
          double target = rng.uniform01() * expint_e1(delta);
          double lo = delta, hi = delta + 1.0;
          while (expint_e1(hi) > target) hi = delta + 2.0 * (hi - delta);
          for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (expint_e1(mid) > target ? lo : hi) = mid;
          }
          return 0.5 * (lo + hi);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return m.law.sample_above(delta, rng);
        } else {
          throw DomainError("sample_jump_above: measure has no jumps");
        }
      },
      t.measure.variant());
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json law_to_json(const JumpLaw& law) {
  return std::visit(
      [](const auto& l) -> json {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, JumpLaw::TwoPoint>) {
          return {{"kind", "two_point"}, {"a", l.a}, {"prob_a", l.prob_a}, {"b", l.b}};
        } else if constexpr (std::is_same_v<T, JumpLaw::Exponential>) {
          return {{"kind", "exponential"}, {"mean", l.mean}, {"sign", l.sign}};
        } else if constexpr (std::is_same_v<T, JumpLaw::NormalLaw>) {
          return {{"kind", "normal"}, {"mean", l.mean}, {"sd", l.sd}};
        } else {
          json atoms = json::array();
          for (const auto& [v, w] : l.atoms) atoms.push_back({v, w});
          return {{"kind", "tabulated"}, {"atoms", atoms}};
        }
      },
      law.variant());
}

JumpLaw law_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "two_point")
    return JumpLaw(JumpLaw::TwoPoint{j.at("a").get<double>(),
                                     j.at("prob_a").get<double>(),
                                     j.at("b").get<double>()});
  if (kind == "exponential")
    return JumpLaw(JumpLaw::Exponential{j.at("mean").get<double>(),
                                        j.at("sign").get<int>()});
  if (kind == "normal")
    return JumpLaw(JumpLaw::NormalLaw{j.at("mean").get<double>(),
                                      j.at("sd").get<double>()});
  if (kind == "tabulated") {
    JumpLaw::Tabulated tab;
    for (const auto& a : j.at("atoms"))
      tab.atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    return JumpLaw(std::move(tab));
  }
  throw DomainError("unknown jump law kind: " + kind);
}

json measure_to_json(const LevyMeasureSpec& m) {
  return std::visit(
      [](const auto& spec) -> json {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, Stable>) {
          return {{"kind", "stable"},
                  {"alpha", spec.alpha},
                  {"c_minus", spec.c_minus},
                  {"c_plus", spec.c_plus}};
        } else if constexpr (std::is_same_v<T, GammaStandard>) {
          return {{"kind", "gamma"}};
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
          return {{"kind", "compound_poisson"},
                  {"intensity", spec.intensity},
                  {"jump_law", law_to_json(spec.law)}};
        } else {
          return {{"kind", "gaussian_only"}};
        }
      },
      m.variant());
}

LevyMeasureSpec measure_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "stable")
    return LevyMeasureSpec(Stable{j.at("alpha").get<double>(),
                                  j.at("c_minus").get<double>(),
                                  j.at("c_plus").get<double>()});
  if (kind == "gamma") return LevyMeasureSpec(GammaStandard{});
  if (kind == "compound_poisson")
    return LevyMeasureSpec(CompoundPoisson{j.at("intensity").get<double>(),
                                           law_from_json(j.at("jump_law"))});
  if (kind == "gaussian_only") return LevyMeasureSpec(GaussianOnly{});
  throw DomainError("unknown measure kind: " + kind);
}

}  // namespace

std::string triplet_to_json(const LevyTriplet& t) {
  json j = {{"measure", measure_to_json(t.measure)},
            {"sigma2", t.sigma2},
            {"b", t.b}};
  return j.dump();
}

LevyTriplet triplet_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("triplet JSON parse error: ") + e.what());
  }
  try {
    return LevyTriplet(measure_from_json(j.at("measure")),
                       j.at("sigma2").get<double>(), j.at("b").get<double>());
  } catch (const json::exception& e) {
    throw DomainError(std::string("triplet JSON schema error: ") + e.what());
  }
}

}  // namespace levy
