#pragma once

#include <bit>
#include <cstdint>

#include "gb/model.hpp"

namespace gb {

// Packed cube view: bit (i + n*j + n*n*k) set means the light at (i,j,k) is
// on. A 4x4x4 cube fills one 64-bit word; plane switches become XOR masks and
// the signed sum a popcount, which is what makes million-cube sweeps cheap.

inline bool cube_packable(int n) { return n >= 1 && n * n * n <= 64; }

inline std::uint64_t cube_full_mask(int n) {
  const int bits = n * n * n;
  return bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

inline std::uint64_t pack_cube(const SignCube& c) {
  const int n = c.side();
  if (!cube_packable(n)) throw ShapeError("cube too large to pack into 64 bits");
  std::uint64_t on = 0;
  int bit = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++bit)
        if (c.at(i, j, k) > 0) on |= std::uint64_t{1} << bit;
  return on;
}

inline SignCube unpack_cube(int n, std::uint64_t on) {
  if (!cube_packable(n)) throw ShapeError("cube too large to pack into 64 bits");
  SignCube c(n);
  int bit = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++bit)
        c.at(i, j, k) = (on >> bit) & 1 ? Sign{1} : Sign{-1};
  return c;
}

// Axis 0 fixes i (an x-plane), 1 fixes j, 2 fixes k.
inline std::uint64_t plane_mask(int n, int axis, int idx) {
  if (!cube_packable(n)) throw ShapeError("cube too large to pack into 64 bits");
  if (axis < 0 || axis > 2 || idx < 0 || idx >= n) throw DomainError("plane out of range");
  std::uint64_t mask = 0;
  int bit = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++bit) {
        const int c = axis == 0 ? i : axis == 1 ? j : k;
        if (c == idx) mask |= std::uint64_t{1} << bit;
      }
  return mask;
}

inline long long packed_signed_sum(int n, std::uint64_t on) {
  return 2LL * std::popcount(on) - static_cast<long long>(n) * n * n;
}

inline int packed_plane_sum(int n, std::uint64_t on, std::uint64_t mask) {
  return 2 * std::popcount(on & mask) - n * n;
}

}  // namespace gb
