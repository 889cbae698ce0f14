#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace trotter {

/// Mixes a master seed with a textual stream label into a 64-bit engine
/// seed. The same (master, label) pair always produces the same stream, so
/// parallel tasks draw from independent, order-free substreams.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label);

struct RngSeed {
  std::uint64_t master_seed = 0;
  std::string stream_label;

  /// New seed for a sub-stream, e.g. seed.derived("state/17").
  RngSeed derived(std::string_view sub) const;

  std::uint64_t value() const { return derive_seed(master_seed, stream_label); }
};

/// Deterministic generator. All floating-point draws are produced with
/// explicit arithmetic on mt19937_64 output (no std distributions), so
/// sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(const RngSeed& seed) : engine_(seed.value()) {}
  explicit Rng(std::uint64_t raw_seed) : engine_(raw_seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// n low-order random bits, n in [1, 64].
  std::uint64_t bits(int n) {
    const std::uint64_t v = engine_();
    return n >= 64 ? v : v & ((std::uint64_t{1} << n) - 1);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller; the spare value is cached.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace trotter
