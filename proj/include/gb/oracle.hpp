#pragma once

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

#include "gb/bitcube.hpp"
#include "gb/model.hpp"

namespace gb {

// Ground truth by exhaustion. The witness always reproduces the minimum when
// re-applied; ties go to the numerically smallest switch mask so results do
// not depend on the worker count.
template <class Witness>
struct OracleResult {
  long long minimum = 0;
  Witness witness;
  std::uint64_t states_examined = 0;
};

struct OracleLimits {
  // Enumeration budget: 2^(m+n-1) states for a board. 28 keeps the default
  // well under a second; raise it explicitly for bigger boards.
  int rect_exponent_cap = 28;
  int jobs = 1;
};

namespace detail {

// Switch mask layout for boards: bits 0..m-2 are rows 1..m-1 (row 0 is fixed
// on by the global sign symmetry of |S|), bits m-1..m+n-2 are columns 0..n-1.
// A set bit means the switch is thrown (sign -1).
inline SwitchPair rect_witness_from_mask(const SignMatrix& a, std::uint64_t mask) {
  SwitchPair sw;
  sw.y.assign(a.rows(), 1);
  sw.x.assign(a.cols(), 1);
  for (int i = 1; i < a.rows(); ++i)
    if ((mask >> (i - 1)) & 1) sw.y[i] = -1;
  for (int j = 0; j < a.cols(); ++j)
    if ((mask >> (a.rows() - 1 + j)) & 1) sw.x[j] = -1;
  return sw;
}

struct RectScanResult {
  long long minimum;
  std::uint64_t mask;
};

// Walks assignments lo..hi-1 in Gray-code order: one switch flips per step
// and the signed sum updates through the cached row/column sums.
inline RectScanResult rect_scan_range(const SignMatrix& a, std::uint64_t lo, std::uint64_t hi) {
  const int m = a.rows();
  const int n = a.cols();
  std::vector<Sign> x(n, 1);
  std::vector<Sign> y(m, 1);
  const std::uint64_t start = lo ^ (lo >> 1);
  for (int i = 1; i < m; ++i)
    if ((start >> (i - 1)) & 1) y[i] = -1;
  for (int j = 0; j < n; ++j)
    if ((start >> (m - 1 + j)) & 1) x[j] = -1;

  std::vector<long long> row(m, 0);  // row[i] = sum_j a_ij x_j
  std::vector<long long> col(n, 0);  // col[j] = sum_i y_i a_ij
  long long s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      row[i] += static_cast<long long>(a.at(i, j)) * x[j];
      col[j] += static_cast<long long>(a.at(i, j)) * y[i];
    }
  for (int i = 0; i < m; ++i) s += y[i] * row[i];

  RectScanResult best{std::llabs(s), start};
  std::uint64_t gray = start;
  for (std::uint64_t t = lo;;) {
    const long long abs_s = std::llabs(s);
    if (abs_s < best.minimum || (abs_s == best.minimum && gray < best.mask))
      best = {abs_s, gray};
    ++t;
    if (t == hi) break;
    const int b = std::countr_zero(t);
    gray ^= std::uint64_t{1} << b;
    if (b < m - 1) {
      const int i = b + 1;
      s -= 2LL * y[i] * row[i];
      y[i] = static_cast<Sign>(-y[i]);
      for (int j = 0; j < n; ++j) col[j] += 2LL * y[i] * a.at(i, j);
    } else {
      const int j = b - (m - 1);
      s -= 2LL * x[j] * col[j];
      x[j] = static_cast<Sign>(-x[j]);
      for (int i = 0; i < m; ++i) row[i] += 2LL * x[j] * a.at(i, j);
    }
  }
  return best;
}

}  // namespace detail

inline OracleResult<SwitchPair> rect_min_imbalance(const SignMatrix& a,
                                                   const OracleLimits& limits = {}) {
  const int exponent = a.rows() + a.cols() - 1;
  if (exponent > limits.rect_exponent_cap || exponent > 62) {
    const std::uint64_t need =
        exponent < 64 ? std::uint64_t{1} << exponent : ~std::uint64_t{0};
    throw ResourceError("board needs " + std::to_string(need) +
                            " oracle states, above the configured cap",
                        need);
  }
  const std::uint64_t total = std::uint64_t{1} << exponent;

  int jobs = limits.jobs < 1 ? 1 : limits.jobs;
  if (static_cast<std::uint64_t>(jobs) > total) jobs = static_cast<int>(total);

  detail::RectScanResult best{};
  if (jobs == 1) {
    best = detail::rect_scan_range(a, 0, total);
  } else {
    std::vector<detail::RectScanResult> partial(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
      const std::uint64_t lo = total / jobs * w + std::min<std::uint64_t>(w, total % jobs);
      const std::uint64_t hi =
          total / jobs * (w + 1) + std::min<std::uint64_t>(w + 1, total % jobs);
      workers.emplace_back(
          [&a, &partial, w, lo, hi] { partial[w] = detail::rect_scan_range(a, lo, hi); });
    }
    for (auto& t : workers) t.join();
    best = partial[0];
    for (int w = 1; w < jobs; ++w) {
      if (partial[w].minimum < best.minimum ||
          (partial[w].minimum == best.minimum && partial[w].mask < best.mask))
        best = partial[w];
    }
  }

  OracleResult<SwitchPair> out;
  out.minimum = best.minimum;
  out.witness = detail::rect_witness_from_mask(a, best.mask);
  out.states_examined = total;
  return out;
}

namespace detail {

struct CubeScanResult {
  long long minimum;
  std::uint64_t mask;
};

// Plane-switch mask layout: bits 0..n-1 = sx, n..2n-1 = sy, 2n..3n-1 = sz.
inline CubeScanResult cube_scan(int n, std::uint64_t on) {
  std::vector<std::uint64_t> masks(3 * n);
  for (int axis = 0; axis < 3; ++axis)
    for (int idx = 0; idx < n; ++idx) masks[axis * n + idx] = plane_mask(n, axis, idx);

  const std::uint64_t total = std::uint64_t{1} << (3 * n);
  std::uint64_t flip = 0;
  std::uint64_t gray = 0;
  CubeScanResult best{std::llabs(packed_signed_sum(n, on)), 0};
  for (std::uint64_t t = 1; t < total; ++t) {
    const int b = std::countr_zero(t);
    gray ^= std::uint64_t{1} << b;
    flip ^= masks[b];
    const long long abs_s = std::llabs(packed_signed_sum(n, on ^ flip));
    if (abs_s < best.minimum || (abs_s == best.minimum && gray < best.mask))
      best = {abs_s, gray};
  }
  return best;
}

inline PlaneSwitches cube_witness_from_mask(int n, std::uint64_t mask) {
  PlaneSwitches sw;
  sw.sx.assign(n, 1);
  sw.sy.assign(n, 1);
  sw.sz.assign(n, 1);
  for (int i = 0; i < n; ++i) {
    if ((mask >> i) & 1) sw.sx[i] = -1;
    if ((mask >> (n + i)) & 1) sw.sy[i] = -1;
    if ((mask >> (2 * n + i)) & 1) sw.sz[i] = -1;
  }
  return sw;
}

}  // namespace detail

inline OracleResult<PlaneSwitches> cube_min_imbalance(const SignCube& c) {
  const int n = c.side();
  if (n != 2 && n != 4) throw ShapeError("cube oracle supports sides 2 and 4");
  const detail::CubeScanResult best = detail::cube_scan(n, pack_cube(c));
  OracleResult<PlaneSwitches> out;
  out.minimum = best.minimum;
  out.witness = detail::cube_witness_from_mask(n, best.mask);
  out.states_examined = std::uint64_t{1} << (3 * n);
  return out;
}

}  // namespace gb
