#pragma once

#include <array>
#include <cstdint>

namespace rivlin {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

enum class StreamPurpose : std::uint32_t { ShearModulus = 1, Ratio = 2 };

/// Counter-based substream keyed by (seed, purpose, index, row). Two streams
/// with different keying never overlap, so draws do not depend on the order
/// in which trials are executed.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamPurpose purpose, std::uint32_t index,
               std::uint32_t row = 0);

  std::uint32_t next_u32();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller; no value is cached between calls.
  double normal();

 private:
  PhiloxKey key_;
  PhiloxCounter base_;
  std::uint32_t block_ = 0;
  PhiloxCounter buffer_{};
  int pos_ = 4;
};

}  // namespace rivlin
