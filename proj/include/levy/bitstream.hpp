#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace levy {

/// Append-only bit sequence, packed MSB-first within each byte.
class BitStream {
 public:
  void append(bool bit) {
    if (size_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (size_ % 8));
    ++size_;
  }
  void append(const BitStream& other) {
    for (std::size_t i = 0; i < other.size_; ++i) append(other.bit(i));
  }

  std::size_t size() const { return size_; }
  bool bit(std::size_t i) const {
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
  }

  // Packed bytes, zero padding in the final byte.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  static BitStream from_bytes(const std::vector<std::uint8_t>& bytes,
                              std::uint64_t bit_count);

  std::string to_string() const;
  static BitStream from_string(std::string_view bits);

  friend bool operator==(const BitStream& a, const BitStream& b) {
    return a.size_ == b.size_ && a.bytes_ == b.bytes_;
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

/// Read cursor over a completed BitStream.
class BitReader {
 public:
  explicit BitReader(const BitStream& s) : stream_(&s) {}

  bool read();  // throws MalformedStream past the end
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return stream_->size() - pos_; }
  bool exhausted() const { return pos_ == stream_->size(); }

 private:
  const BitStream* stream_;
  std::size_t pos_ = 0;
};

}  // namespace levy
