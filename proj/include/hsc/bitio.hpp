// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_BITIO_HPP
#define HSC_BITIO_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hsc/error.hpp"

namespace hsc {

/// MSB-first bit sink. Bits come back from BitReader in write order.
class BitWriter {
public:
  void put_bit(uint32_t bit) {
    acc_ = static_cast<uint8_t>((acc_ << 1) | (bit & 1u));
    if (++fill_ == 8) {
      buf_.push_back(acc_);
      acc_ = 0;
      fill_ = 0;
    }
  }

  void put_bits(uint64_t value, int count) {
    for (int i = count - 1; i >= 0; --i) put_bit(static_cast<uint32_t>(value >> i));
  }

  /// Pads the final partial byte with zero bits.
  std::vector<uint8_t> finish() {
    if (fill_ > 0) {
      buf_.push_back(static_cast<uint8_t>(acc_ << (8 - fill_)));
      acc_ = 0;
      fill_ = 0;
    }
    return std::move(buf_);
  }

  size_t bit_count() const { return buf_.size() * 8 + fill_; }

private:
  std::vector<uint8_t> buf_;
  uint8_t acc_ = 0;
  int fill_ = 0;
};

class BitReader {
public:
  explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint32_t get_bit() {
    if (pos_ >= bytes_.size() * 8)
      raise(ErrorKind::DecodeUnderrun, "bit stream exhausted");
    uint32_t bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return bit;
  }

  uint64_t get_bits(int count) {
    uint64_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | get_bit();
    return v;
  }

  size_t bits_left() const { return bytes_.size() * 8 - pos_; }

private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

} // namespace hsc

#endif
