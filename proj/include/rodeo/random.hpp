#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace rodeo {

/// Philox4x32-10 counter-based generator.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

/// Identifies one independent random stream: a (seed, index) pair. Streams with
/// different ids never share a Philox counter block.
struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

/// Sequential draws from a single (seed, index) stream. The n-th draw of a
/// stream is a pure function of (seed, index, n), so work items can be
/// evaluated in any order or in parallel.
class RngStream {
 public:
  explicit RngStream(StreamId id)
      : key_{static_cast<std::uint32_t>(id.seed),
             static_cast<std::uint32_t>(id.seed >> 32)},
        index_lo_(static_cast<std::uint32_t>(id.index)),
        index_hi_(static_cast<std::uint32_t>(id.index >> 32)) {}

  /// Uniform double in the open interval (0, 1), 53 random bits.
  double uniform() {
    const std::uint64_t a = next_word() >> 5;
    const std::uint64_t b = next_word() >> 6;
    const std::uint64_t k = (a << 26) | b;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint32_t next_word() {
    if (lane_ == 4) {
      block_ = Philox4x32::apply(
          {static_cast<std::uint32_t>(block_index_),
           static_cast<std::uint32_t>(block_index_ >> 32), index_lo_, index_hi_},
          key_);
      ++block_index_;
      lane_ = 0;
    }
    return block_[lane_++];
  }

  Philox4x32::Key key_;
  std::uint32_t index_lo_;
  std::uint32_t index_hi_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Counter block_{};
  int lane_ = 4;
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace rodeo
