#pragma once

#include <optional>
#include <vector>

#include "levy/bitstream.hpp"
#include "levy/path.hpp"

namespace levy {

struct Truncation {
  double c1;          // cap on the jump count, in multiples of f_eps_bits
  double c2;          // cap on sum of log2(|H|/eps), in multiples of f_eps_bits
  double f_eps_bits;  // F(eps) = F1 + F2/ln2, the complexity scale in bits
};

struct CodecParams {
  double eps;    // grid resolution
  double b_eps;  // drift compensation b(eps)
  double m;      // box-scale parameter, canonically F1(eps)
  double p;      // distortion exponent, >= 1
  std::optional<Truncation> truncation;
};

struct ExitRecord {
  double s;  // exit time S_i in [0,1)
  double h;  // quantized height H_i, a multiple of eps with |h/eps| >= 2
};

struct JumpRecord {
  double s;      // exit time S_i
  double s_hat;  // coded dyadic approximation, S_i <= s_hat < S_{i+1}
  double h;      // quantized height
};

struct EncodeResult {
  BitStream stream;
  std::vector<JumpRecord> records;
  bool truncated_to_zero = false;
};

struct Reconstruction {
  double b_eps = 0.0;
  std::vector<std::pair<double, double>> jumps;  // (s_hat, h), s_hat non-decreasing
  bool truncated_to_zero = false;

  // X^hat_t = b_eps*t + sum h_i 1{s_hat_i <= t}, or 0 when truncated.
  CadlagPath to_path(double grid_step) const;
};

// Nearest-neighbour projection onto eps*Z, ties rounded away from zero.
double grid_project(double x, double eps);

// Exit sweep over a path whose drift compensation is already removed:
// S_i is the first time |X'_t - g(X'_{S_{i-1}})| >= 2*eps, H_i the grid move.
// Linear drift between events is handled by solving the crossing in closed form.
std::vector<ExitRecord> detect_exits(const CadlagPath& path_minus_drift,
                                     double eps);

EncodeResult encode_path(const CadlagPath& path, const CodecParams& params);

// Truncating variant: emits the 1-bit zero codeword when the jump count or the
// height complexity strictly exceeds its (c1, c2) cap, or when the full code
// would exceed the deterministic budget worst_case_bits(params).
EncodeResult encode_truncated(const CadlagPath& path, const CodecParams& params);

Reconstruction decode(const BitStream& stream, const CodecParams& params,
                      bool truncated_to_zero = false);

// Per-path certificate: a closed-form upper bound on the emitted bit count,
// evaluated from the exit statistics.  Dominates encode_path's output.
double audit_bit_bound(const std::vector<JumpRecord>& records,
                       const CodecParams& params, std::size_t M);

// Deterministic bit budget implied by the truncation caps; requires params
// with truncation set.
double worst_case_bits(const CodecParams& params);

}  // namespace levy
