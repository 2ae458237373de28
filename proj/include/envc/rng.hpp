#pragma once

#include <cstdint>
#include <random>

#include "envc/mathutil.hpp"

namespace envc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Derives a stream seed from a master seed and a stream index.  Streams with
/// distinct indices are statistically independent for practical purposes.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x2545F4914F6CDD1Dull));
}

/// Random stream with explicitly constructed transforms.  All variate
/// generation goes through the inverse CDF so that results depend only on the
/// mt19937_64 bit stream, which the standard pins down exactly.
class StreamRng {
 public:
  StreamRng(std::uint64_t master, std::uint64_t stream)
      : engine_(stream_seed(master, stream)) {}

  /// Uniform on the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_quantile(uniform01()); }

  /// Standard exponential via inverse CDF.
  double exponential() { return -std::log(uniform01()); }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace envc
