#include "levy/container.hpp"

#include <cstring>

#include "levy/errors.hpp"

namespace levy {

namespace {

void put_u64_le(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64_le(std::vector<std::uint8_t>& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  put_u64_le(out, bits);
}

std::uint64_t get_u64_le(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw MalformedStream("container: truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  pos += 8;
  return v;
}

double get_f64_le(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  std::uint64_t bits = get_u64_le(in, pos);
  double d;
  std::memcpy(&d, &bits, sizeof d);
  return d;
}

constexpr std::uint8_t kMagic[4] = {'L', 'V', 'C', '1'};
constexpr std::uint8_t kVersion = 0x01;

}  // namespace

std::vector<std::uint8_t> container_write(const Container& c) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(c.truncated_to_zero ? 0x01 : 0x00);
  put_f64_le(out, c.eps);
  put_f64_le(out, c.b_eps);
  put_f64_le(out, c.m);
  put_f64_le(out, c.p);
  put_u64_le(out, c.payload.size());
  const auto& bytes = c.payload.bytes();
  out.insert(out.end(), bytes.begin(), bytes.end());
  return out;
}

Container container_read(const std::vector<std::uint8_t>& in) {
  std::size_t pos = 0;
  if (in.size() < 6 || std::memcmp(in.data(), kMagic, 4) != 0)
    throw MalformedStream("container: bad magic");
  if (in[4] != kVersion) throw MalformedStream("container: unsupported version");
  std::uint8_t flags = in[5];
  if (flags & ~0x01u) throw MalformedStream("container: unknown flag bits");
  pos = 6;

  Container c;
  c.truncated_to_zero = (flags & 0x01u) != 0;
  c.eps = get_f64_le(in, pos);
  c.b_eps = get_f64_le(in, pos);
  c.m = get_f64_le(in, pos);
  c.p = get_f64_le(in, pos);
  std::uint64_t bit_count = get_u64_le(in, pos);
  std::uint64_t byte_count = (bit_count + 7) / 8;
  if (in.size() - pos != byte_count)
    throw MalformedStream("container: payload size mismatch");
  std::vector<std::uint8_t> payload(in.begin() + pos, in.end());
  // from_bytes rejects nonzero padding in the final byte.
  c.payload = BitStream::from_bytes(payload, bit_count);
  return c;
}

}  // namespace levy
