#include "levy/codes.hpp"

#include <cmath>

#include "levy/errors.hpp"

namespace levy {

BitStream encode_integer(long long z) {
  BitStream out;
  if (z == 0) {
    out.append(false);
    out.append(false);
    return out;
  }
  unsigned long long mag =
      z > 0 ? static_cast<unsigned long long>(z)
            : static_cast<unsigned long long>(-(z + 1)) + 1ull;
  out.append(z < 0);  // sign
  int n = 0;
  while ((mag >> n) != 0) ++n;  // bit-width of |z|
  for (int i = 0; i < n; ++i) out.append(true);
  out.append(false);
  for (int i = n - 2; i >= 0; --i) out.append((mag >> i) & 1ull);
  return out;
}

long long decode_integer(BitReader& in) {
  bool negative = in.read();
  int n = 0;
  while (in.read()) {
    if (++n > 62) throw MalformedStream("integer code: width overflow");
  }
  if (n == 0) {
    if (negative) throw MalformedStream("integer code: negative zero");
    return 0;
  }
  unsigned long long mag = 1;
  for (int i = 0; i < n - 1; ++i) mag = (mag << 1) | (in.read() ? 1ull : 0ull);
  long long value = static_cast<long long>(mag);
  return negative ? -value : value;
}

int dyadic_level(double delta) {
  if (!(delta > 0.0)) throw DomainError("dyadic code: delta must be > 0");
  if (delta >= 1.0) return 0;
  for (int n = 1; n <= 60; ++n)
    if (std::ldexp(1.0, -n) <= delta) return n;
  throw ResolutionError("dyadic code: delta underflow below 2^-60");
}

DyadicCode encode_dyadic_level(double r, int level) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("dyadic code: r outside [0,1]");
  if (level < 0 || level > 60) throw DomainError("dyadic code: bad level");
  const double scale = std::ldexp(1.0, level);
  long long k = static_cast<long long>(std::ceil(r * scale));
  if (k > static_cast<long long>(scale)) k = static_cast<long long>(scale);
  DyadicCode out;
  out.v = std::ldexp(static_cast<double>(k), -level);
  out.bits = encode_integer(k + 1);
  return out;
}

double decode_dyadic_level(BitReader& in, int level) {
  if (level < 0 || level > 60) throw MalformedStream("dyadic code: bad level");
  long long coded = decode_integer(in);
  long long k = coded - 1;
  if (k < 0 || k > (1ll << level))
    throw MalformedStream("dyadic code: grid index out of range");
  return std::ldexp(static_cast<double>(k), -level);
}

DyadicCode encode_dyadic(double r, double delta) {
  return encode_dyadic_level(r, dyadic_level(delta));
}

double decode_dyadic(BitReader& in, double delta) {
  return decode_dyadic_level(in, dyadic_level(delta));
}

}  // namespace levy
