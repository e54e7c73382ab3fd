#pragma once

#include <utility>

#include "levy/bitstream.hpp"

namespace levy {

// Prefix-free signed integer code: sign bit, then n ones and a zero with
// n = bit-width of |z|, then the n-1 low bits of |z|.  z = 0 is "00".
// Length 2n+1 <= 2(2 + log2|z|) for z != 0.
BitStream encode_integer(long long z);
long long decode_integer(BitReader& in);

// Grid exponent used by the dyadic code: smallest N >= 0 with 2^{-N} <= delta
// (N = 0 when delta >= 1).  Throws ResolutionError when N would exceed 60.
int dyadic_level(double delta);

// Rounds r in [0,1] up to the dyadic grid of step 2^{-N}, clamped at 1, and
// codes the grid index k via encode_integer(k+1).  Guarantees
// r <= v <= min(1, r + delta); bit length <= 2(2 - log2 delta) + 4.
struct DyadicCode {
  BitStream bits;
  double v;  // the coded dyadic value
};
DyadicCode encode_dyadic(double r, double delta);
double decode_dyadic(BitReader& in, double delta);

// Same grid round-up, parameterized by the exponent directly (the codec
// transmits N per jump, since the decoder cannot recompute delta).
DyadicCode encode_dyadic_level(double r, int level);
double decode_dyadic_level(BitReader& in, int level);

}  // namespace levy
