#include "levy/bitstream.hpp"

#include "levy/errors.hpp"

namespace levy {

BitStream BitStream::from_bytes(const std::vector<std::uint8_t>& bytes,
                                std::uint64_t bit_count) {
  if (bytes.size() != (bit_count + 7) / 8)
    throw MalformedStream("bitstream: byte count does not match bit count");
  if (bit_count % 8 != 0) {
    std::uint8_t pad_mask =
        static_cast<std::uint8_t>(0xffu >> (bit_count % 8));
    if (!bytes.empty() && (bytes.back() & pad_mask) != 0)
      throw MalformedStream("bitstream: nonzero padding bits");
  }
  BitStream s;
  s.bytes_ = bytes;
  s.size_ = static_cast<std::size_t>(bit_count);
  return s;
}

std::string BitStream::to_string() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

BitStream BitStream::from_string(std::string_view bits) {
  BitStream s;
  for (char c : bits) {
    if (c != '0' && c != '1') throw MalformedStream("bitstream: bad character");
    s.append(c == '1');
  }
  return s;
}

bool BitReader::read() {
  if (pos_ >= stream_->size())
    throw MalformedStream("bitstream: read past end");
  return stream_->bit(pos_++);
}

}  // namespace levy
