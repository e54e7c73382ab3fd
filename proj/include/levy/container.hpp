#pragma once

#include <cstdint>
#include <vector>

#include "levy/bitstream.hpp"

namespace levy {

/// LVC1 container: magic "LVC1", version 0x01, flags (bit0 =
/// truncated_to_zero), little-endian doubles eps, b_eps, m, p, a little-endian
/// u64 payload bit count, then the payload bytes MSB-first with zero padding.
struct Container {
  double eps = 0.0;
  double b_eps = 0.0;
  double m = 0.0;
  double p = 1.0;
  bool truncated_to_zero = false;
  BitStream payload;
};

std::vector<std::uint8_t> container_write(const Container& c);
Container container_read(const std::vector<std::uint8_t>& bytes);

}  // namespace levy
