#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace heavytail {

/// splitmix64 finalizer; bijective 64-bit mixing.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t fnv1a64(std::string_view s);

/// Stream id = hash(seed, purpose-tag, a, b). Every random stream in the
/// library is keyed this way so that results do not depend on scheduling.
std::uint64_t derive_stream(std::uint64_t seed, std::string_view purpose,
                            std::uint64_t a = 0, std::uint64_t b = 0);

/// A seeded random stream. Draws consume the internal engine; fork() derives
/// an independent child stream from the key alone, so the child does not
/// depend on how much the parent has consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key), engine_(mix64(key)) {}

  std::uint64_t key() const { return key_; }

  Rng fork(std::string_view purpose, std::uint64_t a = 0,
           std::uint64_t b = 0) const {
    return Rng(derive_stream(key_, purpose, a, b));
  }

  /// Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exp(1) by inversion.
  double exponential();

  /// N(0,1) by Box-Muller; one value cached per pair.
  double normal();

  double lognormal(double mu, double sigma);

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace heavytail
