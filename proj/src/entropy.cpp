// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#include "hsc/entropy.hpp"

namespace hsc {

namespace {
constexpr uint32_t kTop = 1u << 24;
constexpr uint32_t kBot = 1u << 16;
} // namespace

void RangeEncoder::encode(uint32_t cum_freq, uint32_t freq, uint32_t total_freq) {
  low_ += cum_freq * (range_ /= total_freq);
  range_ *= freq;
  while ((low_ ^ (low_ + range_)) < kTop ||
         (range_ < kBot && ((range_ = (0u - low_) & (kBot - 1)), true))) {
    out_.push_back(static_cast<uint8_t>(low_ >> 24));
    range_ <<= 8;
    low_ <<= 8;
  }
}

std::vector<uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 4; ++i) {
    out_.push_back(static_cast<uint8_t>(low_ >> 24));
    low_ <<= 8;
  }
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> payload) : in_(payload) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

uint8_t RangeDecoder::next_byte() {
  if (pos_ >= in_.size())
    raise(ErrorKind::DecodeUnderrun, "entropy payload exhausted");
  return in_[pos_++];
}

uint32_t RangeDecoder::decode_freq(uint32_t total_freq) {
  return (code_ - low_) / (range_ /= total_freq);
}

void RangeDecoder::decode_update(uint32_t cum_freq, uint32_t freq) {
  low_ += cum_freq * range_;
  range_ *= freq;
  while ((low_ ^ (low_ + range_)) < kTop ||
         (range_ < kBot && ((range_ = (0u - low_) & (kBot - 1)), true))) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
    low_ <<= 8;
  }
}

AdaptiveModel::AdaptiveModel(std::span<const uint32_t> alphabet_sizes) {
  contexts_.reserve(alphabet_sizes.size());
  for (uint32_t a : alphabet_sizes) add_context(a);
}

uint32_t AdaptiveModel::add_context(uint32_t alphabet_size) {
  if (alphabet_size == 0 || alphabet_size > kMaxAlphabet)
    raise(ErrorKind::InvalidParameter,
          "context alphabet size out of range: " + std::to_string(alphabet_size));
  Context c;
  c.freq.assign(alphabet_size, 1);
  c.total = alphabet_size;
  contexts_.push_back(std::move(c));
  return static_cast<uint32_t>(contexts_.size() - 1);
}

AdaptiveModel::Context& AdaptiveModel::at(uint32_t ctx) {
  if (ctx >= contexts_.size())
    raise(ErrorKind::ContractViolation, "unknown entropy context " + std::to_string(ctx));
  return contexts_[ctx];
}

uint32_t AdaptiveModel::alphabet_size(uint32_t ctx) const {
  return static_cast<uint32_t>(
      const_cast<AdaptiveModel*>(this)->at(ctx).freq.size());
}

void AdaptiveModel::bump(Context& c, uint32_t symbol) {
  c.freq[symbol] += kIncrement;
  c.total += kIncrement;
  if (c.total >= kRescaleLimit) {
    uint32_t total = 0;
    for (uint32_t& f : c.freq) {
      f = (f + 1) >> 1;
      total += f;
    }
    c.total = total;
  }
}

void AdaptiveModel::encode_symbol(RangeEncoder& enc, uint32_t ctx, uint32_t symbol) {
  Context& c = at(ctx);
  if (symbol >= c.freq.size())
    raise(ErrorKind::ContractViolation,
          "symbol " + std::to_string(symbol) + " outside alphabet of context " +
              std::to_string(ctx));
  uint32_t cum = 0;
  for (uint32_t s = 0; s < symbol; ++s) cum += c.freq[s];
  enc.encode(cum, c.freq[symbol], c.total);
  bump(c, symbol);
}

uint32_t AdaptiveModel::decode_symbol(RangeDecoder& dec, uint32_t ctx) {
  Context& c = at(ctx);
  uint32_t f = dec.decode_freq(c.total);
  if (f >= c.total)
    raise(ErrorKind::Corruption, "entropy stream decoded out-of-range frequency");
  uint32_t cum = 0;
  uint32_t symbol = 0;
  while (cum + c.freq[symbol] <= f) cum += c.freq[symbol++];
  dec.decode_update(cum, c.freq[symbol]);
  bump(c, symbol);
  return symbol;
}

std::vector<uint8_t> encode_symbols(
    std::span<const std::pair<uint32_t, uint32_t>> symbols, AdaptiveModel model) {
  RangeEncoder enc;
  for (const auto& [ctx, sym] : symbols) model.encode_symbol(enc, ctx, sym);
  return enc.finish();
}

std::vector<uint32_t> decode_symbols(std::span<const uint8_t> payload,
                                     std::span<const uint32_t> contexts,
                                     AdaptiveModel model) {
  RangeDecoder dec(payload);
  std::vector<uint32_t> out;
  out.reserve(contexts.size());
  for (uint32_t ctx : contexts) out.push_back(model.decode_symbol(dec, ctx));
  return out;
}

} // namespace hsc
