#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "gb/bitcube.hpp"
#include "gb/exact.hpp"
#include "gb/model.hpp"
#include "gb/oracle.hpp"
#include "gb/rng.hpp"

namespace gb {

// Per-plane sums along each axis: x[i] over all (j,k), y[j] over (i,k),
// z[k] over (i,j). Each axis regroups the same total.
struct PlaneSums {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;
};

inline PlaneSums plane_sums(const SignCube& c) {
  const int n = c.side();
  PlaneSums ps{std::vector<int>(n, 0), std::vector<int>(n, 0), std::vector<int>(n, 0)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int v = c.at(i, j, k);
        ps.x[i] += v;
        ps.y[j] += v;
        ps.z[k] += v;
      }
  return ps;
}

// Change of a plane sum when a crossing line of four lights is flipped,
// as a function of how many of them are off: 4*minus_count - 8.
inline int line_flip_delta(int minus_count) {
  if (minus_count < 0 || minus_count > 4)
    throw DomainError("a line holds between 0 and 4 off lights");
  return 4 * minus_count - 8;
}

// All twelve plane sums divisible by 4. Closed under plane switches, which
// is what pins the signed total mod 8.
inline bool property_three(const SignCube& c) {
  if (c.side() != 4) throw ShapeError("property III is defined for side 4");
  const PlaneSums ps = plane_sums(c);
  for (int i = 0; i < 4; ++i)
    if (ps.x[i] % 4 != 0 || ps.y[i] % 4 != 0 || ps.z[i] % 4 != 0) return false;
  return true;
}

struct PlaneStep {
  int axis;  // 0 = x, 1 = y, 2 = z
  int index;
};

namespace detail {

inline void flip_plane(SignCube& c, const PlaneStep& st) {
  const int n = c.side();
  if (st.axis < 0 || st.axis > 2 || st.index < 0 || st.index >= n)
    throw DomainError("plane step out of range");
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      int i = st.index, j = st.index, k = st.index;
      if (st.axis == 0) {
        j = a;
        k = b;
      } else if (st.axis == 1) {
        i = a;
        k = b;
      } else {
        i = a;
        j = b;
      }
      c.at(i, j, k) = static_cast<Sign>(-c.at(i, j, k));
    }
}

}  // namespace detail

// Applies the switch script step by step and reports whether the signed
// total kept its residue mod 8 and the divisibility property held throughout.
inline bool mod8_residue_invariant(const SignCube& c, const std::vector<PlaneStep>& steps) {
  if (!property_three(c)) throw DomainError("cube must satisfy the divisibility property");
  SignCube cur = c;
  const long long residue = ((signed_sum(c) % 8) + 8) % 8;
  for (const PlaneStep& st : steps) {
    detail::flip_plane(cur, st);
    if (((signed_sum(cur) % 8) + 8) % 8 != residue) return false;
    if (!property_three(cur)) return false;
  }
  return true;
}

// Sorted nonnegative z-plane sums of a side-4 cube: the whole state the
// z-switch stage works with.
class ZProfile {
 public:
  explicit ZProfile(std::array<int, 4> z) : z_(z) {
    for (int i = 0; i < 4; ++i) {
      if (z_[i] < 0 || z_[i] > 16 || z_[i] % 2 != 0)
        throw DomainError("profile values must be even and within [0, 16]");
      if (i > 0 && z_[i] < z_[i - 1]) throw DomainError("profile must be nondecreasing");
    }
  }

  static ZProfile sorted_abs(std::array<int, 4> sums) {
    for (int& v : sums) v = std::abs(v);
    std::sort(sums.begin(), sums.end());
    return ZProfile(sums);
  }

  int operator[](int i) const { return z_[i]; }
  const std::array<int, 4>& values() const { return z_; }

  friend bool operator==(const ZProfile&, const ZProfile&) = default;

 private:
  std::array<int, 4> z_;
};

struct GreedyZResult {
  std::array<Sign, 4> signs;
  int achieved;  // |sum of signed profile values|
};

// The backwards greedy with slack 4. Guaranteed to land at most 4 when the
// chain conditions hold; see zprofile_chain_conditions.
inline GreedyZResult greedy_z(const ZProfile& zp) {
  GreedyZResult out{};
  out.signs[3] = 1;
  int sigma = zp[3];
  for (int t = 3; t >= 1; --t) {
    out.signs[t - 1] = sigma >= 0 ? Sign{-1} : Sign{1};
    sigma += out.signs[t - 1] * zp[t - 1];
  }
  out.achieved = std::abs(sigma);
  return out;
}

// Z0 <= 4 and each later value at most the sum of its predecessors plus 4.
inline bool zprofile_chain_conditions(const ZProfile& zp) {
  int prefix = 0;
  for (int i = 0; i < 4; ++i) {
    if (zp[i] > prefix + 4) return false;
    prefix += zp[i];
  }
  return true;
}

inline int zprofile_min_imbalance(const ZProfile& zp) {
  int best = zp[0] + zp[1] + zp[2] + zp[3];
  for (int pat = 0; pat < 16; ++pat) {
    int sum = 0;
    for (int i = 0; i < 4; ++i) sum += ((pat >> i) & 1) ? -zp[i] : zp[i];
    best = std::min(best, std::abs(sum));
  }
  return best;
}

// Ground truth: some z-switch pattern lands the total within 4.
inline bool zprofile_feasible(const ZProfile& zp) { return zprofile_min_imbalance(zp) <= 4; }

// Closed-form sufficient conditions for feasibility: everything at most 8,
// at most two values in {2, 6}, and not one of the known bad profiles. The
// reduced variant drops the three bad profiles that an extra x/y switch can
// always repair, leaving only the ones that cannot be fixed downstream.
inline bool zprofile_conditions(const ZProfile& zp, bool reduced_exclusions = false) {
  static constexpr std::array<std::array<int, 4>, 6> kFull = {{{0, 0, 0, 6},
                                                               {0, 0, 0, 8},
                                                               {0, 0, 2, 8},
                                                               {0, 6, 8, 8},
                                                               {0, 8, 8, 8},
                                                               {2, 8, 8, 8}}};
  static constexpr std::array<std::array<int, 4>, 3> kReduced = {
      {{0, 6, 8, 8}, {0, 8, 8, 8}, {2, 8, 8, 8}}};

  int in_26 = 0;
  for (int i = 0; i < 4; ++i) {
    if (zp[i] > 8) return false;
    if (zp[i] == 2 || zp[i] == 6) ++in_26;
  }
  if (in_26 > 2) return false;
  if (reduced_exclusions) {
    for (const auto& bad : kReduced)
      if (zp.values() == bad) return false;
  } else {
    for (const auto& bad : kFull)
      if (zp.values() == bad) return false;
  }
  return true;
}

// The ten profiles with plane-sum total at most 14 that defeat the slack-4
// greedy and need switch surgery on the other axes. Returns the catalog
// position (1-10), or 0 if the profile is not one of them.
inline int hard_profile_index(const ZProfile& zp) {
  static constexpr std::array<std::array<int, 4>, 10> kCatalog = {{{0, 0, 0, 8},
                                                                   {0, 0, 2, 8},
                                                                   {0, 0, 0, 14},
                                                                   {0, 0, 0, 12},
                                                                   {0, 0, 2, 12},
                                                                   {0, 0, 0, 6},
                                                                   {0, 0, 0, 10},
                                                                   {0, 0, 4, 10},
                                                                   {0, 0, 2, 10},
                                                                   {0, 2, 2, 10}}};
  for (std::size_t i = 0; i < kCatalog.size(); ++i)
    if (zp.values() == kCatalog[i]) return static_cast<int>(i) + 1;
  return 0;
}

// Exhaustive check of the side-2 threshold: every initial state reaches
// imbalance 0 or 2, states with total = 2 (mod 4) can never do better than 2,
// and the worst case over all 256 states is exactly 2 (the returned value).
inline int verify_p2() {
  std::array<std::uint64_t, 6> masks;
  for (int axis = 0; axis < 3; ++axis)
    for (int idx = 0; idx < 2; ++idx) masks[axis * 2 + idx] = plane_mask(2, axis, idx);

  long long worst = 0;
  for (std::uint64_t on = 0; on < 256; ++on) {
    const long long s0 = packed_signed_sum(2, on);
    long long best = std::llabs(s0);
    for (std::uint64_t sw = 0; sw < 64; ++sw) {
      std::uint64_t flip = 0;
      for (int b = 0; b < 6; ++b)
        if ((sw >> b) & 1) flip ^= masks[b];
      const long long s = packed_signed_sum(2, on ^ flip);
      if ((s - s0) % 4 != 0) throw InternalError("mod-4 conservation violated on side 2");
      best = std::min(best, std::llabs(s));
    }
    const bool residue2 = ((s0 % 4) + 4) % 4 == 2;
    if (residue2 && best != 2) throw InternalError("residue-2 state escaped imbalance 2");
    if (!residue2 && best != 0) throw InternalError("residue-0 state failed to reach 0");
    worst = std::max(worst, best);
  }
  return static_cast<int>(worst);
}

namespace detail {

// 4x4 layer packed into 16 bits, bit = col + 4*row; set bit = light on.
struct LayerTables {
  std::array<std::uint16_t, 16> rows;
  std::array<std::uint16_t, 16> cols;
  std::array<std::uint16_t, 256> pattern;  // pattern[rm | cm<<4] = flip mask

  LayerTables() {
    std::array<std::uint16_t, 16> rowexp{};
    std::array<std::uint16_t, 16> colexp{};
    for (int m = 0; m < 16; ++m) {
      std::uint16_t re = 0, ce = 0;
      for (int b = 0; b < 4; ++b)
        if ((m >> b) & 1) {
          re |= static_cast<std::uint16_t>(0xF << (4 * b));
          ce |= static_cast<std::uint16_t>(0x1111 << b);
        }
      rowexp[m] = re;
      colexp[m] = ce;
    }
    for (int rm = 0; rm < 16; ++rm)
      for (int cm = 0; cm < 16; ++cm)
        pattern[rm | (cm << 4)] = static_cast<std::uint16_t>(rowexp[rm] ^ colexp[cm]);
    rows = rowexp;
    cols = colexp;
  }
};

inline const LayerTables& layer_tables() {
  static const LayerTables t;
  return t;
}

inline long long layer_total_over_switches(std::uint16_t board) {
  const LayerTables& t = layer_tables();
  long long total = 0;
  for (int p = 0; p < 256; ++p)
    total += std::abs(2 * std::popcount(static_cast<unsigned>(board ^ t.pattern[p])) - 16);
  return total;
}

}  // namespace detail

// Mean imbalance of one 4x4 layer over all 256 row/column switch choices,
// as an exact fraction.
inline Rational layer_switch_average(std::uint16_t board) {
  return Rational(detail::layer_total_over_switches(board), 256);
}

// Worst such mean over all 65536 layers. Exactly 7/2, which is what caps the
// post-switch plane-sum total of a full cube at 4 * 7/2 = 14.
inline Rational max_layer_average() {
  long long worst = 0;
  for (std::uint32_t board = 0; board < 65536; ++board)
    worst = std::max(worst, detail::layer_total_over_switches(static_cast<std::uint16_t>(board)));
  return Rational(worst, 256);
}

struct CubeSolveResult {
  PlaneSwitches switches;
  long long signed_sum = 0;
  long long imbalance = 0;
  bool used_fallback = false;
};

namespace detail {

struct Cube4Tables {
  std::array<std::uint64_t, 4> zmask;
  std::array<std::uint64_t, 256> xy_flip;  // bits 0..3 = sx thrown, 4..7 = sy thrown

  Cube4Tables() {
    std::array<std::uint64_t, 4> xm{}, ym{};
    for (int i = 0; i < 4; ++i) {
      xm[i] = plane_mask(4, 0, i);
      ym[i] = plane_mask(4, 1, i);
      zmask[i] = plane_mask(4, 2, i);
    }
    for (int m = 0; m < 256; ++m) {
      std::uint64_t f = 0;
      for (int b = 0; b < 4; ++b) {
        if ((m >> b) & 1) f ^= xm[b];
        if ((m >> (4 + b)) & 1) f ^= ym[b];
      }
      xy_flip[m] = f;
    }
  }
};

inline const Cube4Tables& cube4_tables() {
  static const Cube4Tables t;
  return t;
}

}  // namespace detail

// Three stages: pick the x/y switch combination minimizing the total of
// absolute z-plane sums (the averaging bound keeps the best at most 14),
// normalize and sort the z sums, run the slack-4 greedy; if that still
// exceeds 4, fall back to full enumeration of the 4096 switch assignments,
// which cannot exceed 4 either. The result is verified by re-application.
inline CubeSolveResult solve_cube4(const SignCube& c) {
  if (c.side() != 4) throw ShapeError("solver supports side 4 only");
  const detail::Cube4Tables& tab = detail::cube4_tables();
  const std::uint64_t on = pack_cube(c);

  int best_xy = 0;
  int best_total = 1 << 30;
  for (int xy = 0; xy < 256; ++xy) {
    const std::uint64_t s = on ^ tab.xy_flip[xy];
    int total = 0;
    for (int k = 0; k < 4; ++k) total += std::abs(packed_plane_sum(4, s, tab.zmask[k]));
    if (total < best_total) {
      best_total = total;
      best_xy = xy;
    }
  }
  if (best_total > 14) throw InternalError("averaging bound violated on side 4");

  const std::uint64_t s1 = on ^ tab.xy_flip[best_xy];
  std::array<int, 4> zs{};
  std::array<Sign, 4> sz_pre{};
  std::array<int, 4> zv{};
  for (int k = 0; k < 4; ++k) {
    zs[k] = packed_plane_sum(4, s1, tab.zmask[k]);
    sz_pre[k] = zs[k] < 0 ? Sign{-1} : Sign{1};
    zv[k] = std::abs(zs[k]);
  }
  std::array<int, 4> perm{0, 1, 2, 3};
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return zv[a] < zv[b]; });
  const ZProfile zp({zv[perm[0]], zv[perm[1]], zv[perm[2]], zv[perm[3]]});
  const GreedyZResult g = greedy_z(zp);

  CubeSolveResult out;
  out.switches.sx.assign(4, 1);
  out.switches.sy.assign(4, 1);
  out.switches.sz.assign(4, 1);
  for (int b = 0; b < 4; ++b) {
    if ((best_xy >> b) & 1) out.switches.sx[b] = -1;
    if ((best_xy >> (4 + b)) & 1) out.switches.sy[b] = -1;
  }
  for (int t = 0; t < 4; ++t) {
    const int k = perm[t];
    out.switches.sz[k] = static_cast<Sign>(sz_pre[k] * g.signs[t]);
  }
  out.imbalance = g.achieved;

  if (out.imbalance > 4) {
    const detail::CubeScanResult sc = detail::cube_scan(4, on);
    if (sc.minimum > 4) throw InternalError("exhaustive side-4 minimum above 4");
    out.switches = detail::cube_witness_from_mask(4, sc.mask);
    out.imbalance = sc.minimum;
    out.used_fallback = true;
  }

  out.signed_sum = signed_sum(apply_plane_switches(c, out.switches));
  if (std::llabs(out.signed_sum) != out.imbalance)
    throw InternalError("recomposed plane switches disagree with the solver");
  return out;
}

namespace detail {

inline bool packed_property_three(std::uint64_t on, const Cube4Tables& tab) {
  // Plane sum 2*pc - 16 is divisible by 4 exactly when pc is even.
  static const std::array<std::uint64_t, 4> xm = {plane_mask(4, 0, 0), plane_mask(4, 0, 1),
                                                  plane_mask(4, 0, 2), plane_mask(4, 0, 3)};
  static const std::array<std::uint64_t, 4> ym = {plane_mask(4, 1, 0), plane_mask(4, 1, 1),
                                                  plane_mask(4, 1, 2), plane_mask(4, 1, 3)};
  for (int i = 0; i < 4; ++i) {
    if (std::popcount(on & xm[i]) % 2 != 0) return false;
    if (std::popcount(on & ym[i]) % 2 != 0) return false;
    if (std::popcount(on & tab.zmask[i]) % 2 != 0) return false;
  }
  return true;
}

}  // namespace detail

// Seeded rejection sampling for a side-4 cube with all plane sums divisible
// by 4. Roughly one candidate in a thousand qualifies.
inline SignCube random_property_three_cube(std::uint64_t seed, std::uint64_t budget = 4'000'000) {
  auto eng = seeded_engine(seed, Stream::extremal);
  const detail::Cube4Tables& tab = detail::cube4_tables();
  for (std::uint64_t it = 0; it < budget; ++it) {
    const std::uint64_t on = eng();
    if (detail::packed_property_three(on, tab)) return unpack_cube(4, on);
  }
  throw ResourceError("no qualifying cube found within budget", budget);
}

// A cube whose minimum imbalance is exactly 4: plane sums all divisible by 4
// and signed total = 4 (mod 8), so no switch sequence leaves the residue, and
// the exhaustive 4096-assignment minimum certifies the value.
inline SignCube find_extremal_cube4(std::uint64_t seed = 1, std::uint64_t budget = 4'000'000) {
  auto eng = seeded_engine(seed, Stream::extremal);
  const detail::Cube4Tables& tab = detail::cube4_tables();
  for (std::uint64_t it = 0; it < budget; ++it) {
    const std::uint64_t on = eng();
    if (!detail::packed_property_three(on, tab)) continue;
    if (((packed_signed_sum(4, on) % 8) + 8) % 8 != 4) continue;
    if (detail::cube_scan(4, on).minimum != 4) continue;
    return unpack_cube(4, on);
  }
  throw ResourceError("no extremal cube found within budget", budget);
}

}  // namespace gb
