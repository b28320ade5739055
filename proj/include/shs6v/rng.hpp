#pragma once

#include <cstdint>

namespace shs6v {

/// Counter-based generator: output k is a 64-bit mix of seed + k * gamma,
/// so the same seed gives the same sequence on every platform and any
/// draw can be addressed directly by its counter. Replica r runs on
/// seed XOR r.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  RngStream replica(std::uint64_t r) const { return RngStream(seed_ ^ r); }

  std::uint64_t value_at(std::uint64_t counter) const {
    std::uint64_t z = seed_ + (counter + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// uniform in [0, 1) with 53 significant bits
  double uniform_at(std::uint64_t counter) const {
    return static_cast<double>(value_at(counter) >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return value_at(counter_++); }
  double next_uniform() { return uniform_at(counter_++); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace shs6v
