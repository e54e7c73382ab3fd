#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levy/rng.hpp"

namespace levy {

/// Law of a single compound-Poisson jump.
class JumpLaw {
 public:
  struct TwoPoint {
    double a;
    double prob_a;
    double b;
  };
  struct Exponential {
    double mean;
    int sign;  // +1 or -1
  };
  struct NormalLaw {
    double mean;
    double sd;
  };
  struct Tabulated {
    std::vector<std::pair<double, double>> atoms;  // (value != 0, weight > 0)
  };
  using Variant = std::variant<TwoPoint, Exponential, NormalLaw, Tabulated>;

  explicit JumpLaw(Variant v);

  const Variant& variant() const { return v_; }

  double mass_above(double eps) const;            // P(|Y| > eps)
  double second_moment_capped(double eps) const;  // E[Y^2 ^ eps^2]
  double second_moment_below(double d) const;     // E[Y^2 1{|Y| <= d}]
  double log_tail(double eps) const;              // E[ln(|Y|/eps) 1{|Y|>eps}], nats
  double pow_tail(double mu, double eps) const;   // E[(|Y|/eps)^mu 1{|Y|>eps}]
  double abs_moment_above(double q, double t) const;  // E[|Y|^q 1{|Y|>t}]
  double mean_in_band(double lo, double hi) const;    // E[Y 1{lo<|Y|<=hi}]

  double sample(Rng& rng) const;
  double sample_above(double delta, Rng& rng) const;

  bool has_density() const;

 private:
  Variant v_;
};

/// Parametric descriptor of the Lévy measure.
class LevyMeasureSpec {
 public:
  struct Stable {
    double alpha;    // in (0,2)
    double c_minus;  // >= 0
    double c_plus;   // >= 0, c_minus + c_plus > 0
  };
  struct GammaStandard {};  // density x^{-1} e^{-x} on x > 0
  struct CompoundPoisson {
    double intensity;  // > 0
    JumpLaw law;
  };
  struct GaussianOnly {};  // nu == 0
  using Variant = std::variant<Stable, GammaStandard, CompoundPoisson, GaussianOnly>;

  explicit LevyMeasureSpec(Variant v);

  const Variant& variant() const { return v_; }
  bool is_gaussian_only() const;

 private:
  Variant v_;
};

/// Generating triplet (nu, sigma^2, b).
struct LevyTriplet {
  LevyMeasureSpec measure;
  double sigma2 = 0.0;
  double b = 0.0;

  LevyTriplet(LevyMeasureSpec m, double s2, double drift);
};

enum class EvalMethod {
  Auto,        // closed form where available, quadrature otherwise
  Quadrature,  // force the numeric route (cross-check path)
};

// nu([-eps,eps]^c)
double tail_mass(const LevyTriplet& t, double eps, EvalMethod m = EvalMethod::Auto);

// F1(eps) = eps^{-2} (sigma^2 + \int x^2 ^ eps^2 nu(dx))
double f1(const LevyTriplet& t, double eps, EvalMethod m = EvalMethod::Auto);

// F2(eps) = \int_{|x|>eps} ln(|x|/eps) nu(dx), in nats; may be +inf.
double f2(const LevyTriplet& t, double eps, EvalMethod m = EvalMethod::Auto);
double f2_bits(const LevyTriplet& t, double eps, EvalMethod m = EvalMethod::Auto);

// F(eps) = F1(eps) + F2(eps)
double f_total(const LevyTriplet& t, double eps, EvalMethod m = EvalMethod::Auto);

// F1 + F2 converted to base 2, the scale bit counts are compared against.
double f_total_bits(const LevyTriplet& t, double eps, EvalMethod m = EvalMethod::Auto);

// b(eps) = b - \int_{[-1,1]\[-eps,eps]} x nu(dx) + \int_{[-eps,eps]\[-1,1]} x nu(dx)
double drift_compensation(const LevyTriplet& t, double eps,
                          EvalMethod m = EvalMethod::Auto);

// \int_{|x|>1} |x|^q nu(dx); may be +inf.
double moment_diag(const LevyTriplet& t, double q);

// \int_{|x|>eps} (|x|/eps)^mu nu(dx) / nu([-eps,eps]^c)
double condition_b_ratio(const LevyTriplet& t, double mu, double eps);

// \int_{|x|<=delta} x^2 nu(dx), the small-jump variance budget.
double small_jump_variance(const LevyTriplet& t, double delta);

// Draws one jump from the normalized restriction of nu to {|x| > delta}.
double sample_jump_above(const LevyTriplet& t, double delta, Rng& rng);

// JSON round trip; schema {"measure": {"kind": ..., ...}, "sigma2": ..., "b": ...}.
std::string triplet_to_json(const LevyTriplet& t);
LevyTriplet triplet_from_json(const std::string& json_text);

}  // namespace levy
