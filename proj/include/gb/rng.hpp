#pragma once

#include <cstdint>
#include <random>

namespace gb {

// All randomized output is drawn from mt19937_64, which the C++ standard pins
// bit-for-bit across platforms. Each purpose gets its own stream so that e.g.
// board generation and cube generation with the same seed do not correlate.
enum class Stream : std::uint32_t {
  board = 1,
  cube = 2,
  extremal = 3,
  script = 4,
  sweep = 5,
};

inline std::mt19937_64 seeded_engine(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

// One engine output per sign; top bit decides. Distribution classes are not
// used anywhere because their output is not specified portably.
inline std::int8_t draw_sign(std::mt19937_64& eng) {
  return (eng() >> 63) ? std::int8_t{1} : std::int8_t{-1};
}

}  // namespace gb
