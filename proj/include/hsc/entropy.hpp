// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_ENTROPY_HPP
#define HSC_ENTROPY_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hsc/error.hpp"

namespace hsc {

/// Carryless range coder, 32-bit state, integer-only. Payloads are
/// byte-identical across runs and platforms for identical symbol streams.
class RangeEncoder {
public:
  void encode(uint32_t cum_freq, uint32_t freq, uint32_t total_freq);

  /// Flushes the state; the coder cannot be reused afterwards.
  std::vector<uint8_t> finish();

  size_t bytes_written() const { return out_.size(); }

private:
  uint32_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  std::vector<uint8_t> out_;
};

class RangeDecoder {
public:
  explicit RangeDecoder(std::span<const uint8_t> payload);

  /// Returns a value in [0, total_freq); the caller maps it to a symbol
  /// and reports the subrange back through decode_update.
  uint32_t decode_freq(uint32_t total_freq);
  void decode_update(uint32_t cum_freq, uint32_t freq);

private:
  uint8_t next_byte();

  uint32_t low_ = 0;
  uint32_t code_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

/// Per-context adaptive frequency tables. Counts start at 1 (uniform prior)
/// and are halved when a context total reaches the rescale threshold, which
/// keeps totals inside the coder precision bound. Encode and decode adapt
/// identically, so a model value-copied to both sides stays in sync.
class AdaptiveModel {
public:
  static constexpr uint32_t kIncrement = 16;
  static constexpr uint32_t kRescaleLimit = 1u << 13;
  static constexpr uint32_t kMaxAlphabet = 1u << 12;

  AdaptiveModel() = default;
  explicit AdaptiveModel(std::span<const uint32_t> alphabet_sizes);

  /// Returns the new context's id; ids are dense from 0.
  uint32_t add_context(uint32_t alphabet_size);

  size_t context_count() const { return contexts_.size(); }
  uint32_t alphabet_size(uint32_t ctx) const;

  void encode_symbol(RangeEncoder& enc, uint32_t ctx, uint32_t symbol);
  uint32_t decode_symbol(RangeDecoder& dec, uint32_t ctx);

private:
  struct Context {
    std::vector<uint32_t> freq;
    uint32_t total = 0;
  };

  Context& at(uint32_t ctx);
  static void bump(Context& c, uint32_t symbol);

  std::vector<Context> contexts_;
};

/// Batch interface: codes (context, symbol) pairs against a model's initial
/// state. `model` is taken by value; the caller's instance is not mutated.
std::vector<uint8_t> encode_symbols(
    std::span<const std::pair<uint32_t, uint32_t>> symbols, AdaptiveModel model);

/// Exact inverse of encode_symbols given the same context sequence and
/// initial model state.
std::vector<uint32_t> decode_symbols(std::span<const uint8_t> payload,
                                     std::span<const uint32_t> contexts,
                                     AdaptiveModel model);

} // namespace hsc

#endif
