#pragma once

#include <array>
#include <cstdint>

namespace effham {

/// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011),
/// with the published round constants M0 = 0xD2511F53, M1 = 0xCD9E8D57 and
/// Weyl keys 0x9E3779B9, 0xBB67AE85. Counter-based means the i-th draw is a
/// pure function of (seed, stream, i), which keeps sweep outputs
/// reproducible across platforms and languages.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();

  /// Uniform double in [0, 1) from 53 random mantissa bits
  /// (two u32 draws: (hi << 21 | lo >> 11) * 2^-53).
  double next_double();

  /// Standard normal via Box-Muller on two uniforms (the spare value is
  /// cached, so draws come in deterministic pairs).
  double next_gaussian();

 private:
  void refill();

  std::array<std::uint32_t, 4> counter_{};
  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace effham
