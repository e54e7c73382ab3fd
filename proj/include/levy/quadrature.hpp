#pragma once

#include <functional>

namespace levy {

inline constexpr double kQuadRelTol = 1e-9;
inline constexpr double kQuadAbsFloor = 1e-14;

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a,b].
// Callers are expected to split at integrand kinks themselves.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = kQuadRelTol, double abs_floor = kQuadAbsFloor);

// Integral of f over [a,+inf) by doubling blocks [R,2R].  Returns +inf when
// the block sums fail a Cauchy test while R grows up to a*2^40.
double integrate_tail(const std::function<double(double)>& f, double a,
                      double rel_tol = kQuadRelTol, double abs_floor = kQuadAbsFloor);

// Exponential integral E1(x) = \int_x^inf t^{-1} e^{-t} dt, x > 0.
double expint_e1(double x);

}  // namespace levy
