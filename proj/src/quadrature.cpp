#include "levy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "levy/errors.hpp"

namespace levy {

namespace {

// Kronrod-15 abscissae on [0,1] and weights; Gauss-7 weights for the
// odd-indexed Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    double f1 = f(c - x);
    double f2 = f(c + x);
    result_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }
  result_k *= h;
  result_g *= h;
  double err = std::abs(result_k - result_g);
  // Standard QUADPACK-style error sharpening.
  if (err > 0.0) err = std::pow(200.0 * err, 1.5);
  return {result_k, err};
}

struct Segment {
  double a, b, value, err;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_floor) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, rel_tol, abs_floor);

  std::vector<Segment> segs;
  PanelResult first = gk15(f, a, b);
  segs.push_back({a, b, first.kronrod, first.err});

  constexpr int kMaxSegments = 4000;
  for (int iter = 0; iter < kMaxSegments; ++iter) {
    double total = 0.0, err = 0.0;
    for (const auto& s : segs) {
      total += s.value;
      err += s.err;
    }
    double tol = std::max(abs_floor, rel_tol * std::abs(total));
    if (err <= tol) return total;

    auto worst = std::max_element(
        segs.begin(), segs.end(),
        [](const Segment& x, const Segment& y) { return x.err < y.err; });
    Segment s = *worst;
    double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) return total;  // interval exhausted
    PanelResult left = gk15(f, s.a, mid);
    PanelResult right = gk15(f, mid, s.b);
    *worst = {s.a, mid, left.kronrod, left.err};
    segs.push_back({mid, s.b, right.kronrod, right.err});
  }

  double total = 0.0, err = 0.0;
  for (const auto& s : segs) {
    total += s.value;
    err += s.err;
  }
  if (err <= std::max(abs_floor * 100.0, 1e-6 * std::abs(total))) return total;
  throw QuadratureError("adaptive quadrature did not converge", err);
}

double integrate_tail(const std::function<double(double)>& f, double a,
                      double rel_tol, double abs_floor) {
  double lo = a;
  double hi = a > 0.0 ? 2.0 * a : a + 1.0;
  double total = 0.0;
  const double r_max = (a > 0.0 ? a : 1.0) * 0x1p40;
  int quiet_blocks = 0;
  double prev_block = std::numeric_limits<double>::infinity();
  while (true) {
    double block = integrate(f, lo, hi, rel_tol, abs_floor);
    total += block;
    double tol = std::max(abs_floor, rel_tol * std::abs(total));
    if (std::abs(block) <= tol) {
      if (++quiet_blocks >= 2) return total;
    } else {
      quiet_blocks = 0;
    }
    if (hi >= r_max) {
      // Cauchy test failed within the doubling budget: treat as divergent.
      if (std::abs(block) > tol && std::abs(block) >= 0.5 * std::abs(prev_block))
        return std::numeric_limits<double>::infinity();
      return total;
    }
    prev_block = block;
    lo = hi;
    hi *= 2.0;
  }
}

double expint_e1(double x) {
  if (x <= 0.0) throw DomainError("expint_e1 requires x > 0");
  if (x <= 1.0) {
    // Series: E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!).
    constexpr double kEulerGamma = 0.57721566490153286;
    double sum = 0.0, term = 1.0;
    for (int k = 1; k <= 60; ++k) {
      term *= -x / k;
      double add = -term / k;
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
  }
  // Continued fraction (Lentz).
  double b = x + 1.0, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 200; ++i) {
    double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x);
}

}  // namespace levy
