#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "gb/exact.hpp"
#include "gb/model.hpp"

namespace gb {

// Fractional column assignment inside [-1,1]^n together with its floating
// index set J = { i : x_i != +-1 }.
struct FloatingAssignment {
  RationalVector x;
  std::vector<int> floating;
};

inline std::vector<int> floating_indices(const RationalVector& x) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(x.size()); ++i)
    if (x[i] != 1 && x[i] != -1) out.push_back(i);
  return out;
}

// Sorted nonnegative row sums bounded by 0 <= r_i <= 2(i-1), 1-based.
inline bool property_one_sorted(const std::vector<long long>& sorted_sums) {
  for (int i = 0; i < static_cast<int>(sorted_sums.size()); ++i)
    if (sorted_sums[i] < 0 || sorted_sums[i] > 2LL * i) return false;
  return true;
}

// s_1 <= 2 and s_i <= s_1 + ... + s_{i-1} + 2: the greedy precondition.
inline bool property_two(const std::vector<long long>& s) {
  long long prefix = 0;
  for (long long v : s) {
    if (v < 0 || v > prefix + 2) return false;
    prefix += v;
  }
  return true;
}

// Pad with all-on rows to n x n. The original rows stay a prefix, so the
// prefix bounds established on the square board carry over to them.
inline SignMatrix augment_to_square(const SignMatrix& a) {
  if (a.rows() > a.cols()) throw ShapeError("cannot square a board with m > n");
  if (a.rows() == a.cols()) return a;
  SignMatrix out(a.cols(), a.cols(), 1);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  return out;
}

using StepObserver = std::function<void(const FloatingAssignment&)>;

// Column signs for a square board with even side such that the row sums
// satisfy |r_i| <= 2(i-1). Starts from the all-zero fractional assignment and
// repeatedly walks along a null direction of the submatrix formed by the
// first |J|-1 rows and the floating columns until the walls of the unit cube
// fix every component. Each step keeps the first |J|-1 row sums at zero and
// retires at least one floating component; with n even, none can remain.
//
// The assignment is held as integer numerators over one common denominator;
// the walk to the wall is then the same min over (1 -+ x_i)/d_i that
// max_step computes, done in integer cross-multiplied comparisons.
inline std::vector<Sign> property_one_column_switches(const SignMatrix& a,
                                                      const StepObserver& observer = {}) {
  const int n = a.cols();
  if (a.rows() != n) throw ShapeError("square board required");
  if (n % 2 != 0) throw ShapeError("odd side is unsupported");

  std::vector<Integer> u(n, Integer(0));  // x_i = u_i / q, |u_i| <= q
  Integer q = 1;

  auto floating_of = [&]() {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
      if (boost::multiprecision::abs(u[i]) != q) out.push_back(i);
    return out;
  };
  auto emit = [&](const std::vector<int>& floating) {
    if (!observer) return;
    FloatingAssignment fa;
    fa.x.resize(n);
    for (int i = 0; i < n; ++i) fa.x[i] = Rational(u[i], q);
    fa.floating = floating;
    observer(fa);
  };

  std::vector<int> jset = floating_of();
  emit(jset);

  while (jset.size() >= 2) {
    const int k = static_cast<int>(jset.size());
    std::vector<std::vector<long long>> m(k - 1, std::vector<long long>(k));
    for (int i = 0; i < k - 1; ++i)
      for (int t = 0; t < k; ++t) m[i][t] = a.at(i, jset[t]);
    const std::vector<Integer> c = detail::nullspace_core(m, k);

    // lambda = min over moving components of (q -+ u_i) / (q |c_t|), kept as
    // an exact fraction bn/bd.
    Integer bn, bd;
    bool found = false;
    for (int t = 0; t < k; ++t) {
      if (c[t] == 0) continue;
      Integer num = c[t] > 0 ? Integer(q - u[jset[t]]) : Integer(q + u[jset[t]]);
      Integer den = q * boost::multiprecision::abs(c[t]);
      if (!found || num * bd < bn * den) {
        bn = std::move(num);
        bd = std::move(den);
        found = true;
      }
    }
    if (!found) throw InternalError("null direction has no moving component");

    const Integer bnq = bn * q;
    for (int i = 0; i < n; ++i) u[i] *= bd;
    for (int t = 0; t < k; ++t) u[jset[t]] += bnq * c[t];
    q *= bd;

    Integer g = q;
    for (int i = 0; i < n && g > 1; ++i) g = boost::multiprecision::gcd(g, u[i]);
    if (g > 1) {
      for (int i = 0; i < n; ++i) u[i] /= g;
      q /= g;
    }

    std::vector<int> next = floating_of();
    if (next.size() >= jset.size()) throw InternalError("floating set failed to shrink");
    jset = std::move(next);
    emit(jset);
  }
  if (!jset.empty())
    throw InternalError("a single floating component survived despite even side");

  std::vector<Sign> out(n);
  for (int i = 0; i < n; ++i) out[i] = u[i] == q ? Sign{1} : Sign{-1};

  for (int i = 0; i < n; ++i) {
    long long r = 0;
    for (int j = 0; j < n; ++j) r += static_cast<long long>(a.at(i, j)) * out[j];
    if (r % 2 != 0) throw InternalError("odd row sum on a board with even side");
    if (std::llabs(r) > 2LL * i) throw InternalError("prefix row-sum bound violated");
  }
  return out;
}

struct RowProfile {
  std::vector<long long> raw_sums;  // A*x per original row, before any flips
  std::vector<int> perm;            // perm[t] = original row index at sorted position t
  std::vector<Sign> row_flips;      // net sign normalization per original row
  std::optional<int> col_flip;
  std::vector<long long> s;         // nonnegative transformed sums, in perm order
};

// Normalizes rows to nonnegative sums, orders them nondecreasing, and when
// the greedy precondition still fails, flips one column (which turns every
// zero row into a 2 and shifts the rest by at most 2) and renormalizes.
inline RowProfile property_two_profile(const SignMatrix& a, const std::vector<Sign>& x) {
  if (static_cast<int>(x.size()) != a.cols())
    throw ShapeError("column switch length does not match board");
  const int m = a.rows();
  const int n = a.cols();

  RowProfile out;
  out.raw_sums.resize(m);
  out.row_flips.resize(m);
  std::vector<long long> r(m);
  for (int i = 0; i < m; ++i) {
    long long sum = 0;
    for (int j = 0; j < n; ++j) sum += static_cast<long long>(a.at(i, j)) * x[j];
    out.raw_sums[i] = sum;
    out.row_flips[i] = sum < 0 ? Sign{-1} : Sign{1};
    r[i] = std::llabs(sum);
  }

  out.perm.resize(m);
  std::iota(out.perm.begin(), out.perm.end(), 0);
  std::stable_sort(out.perm.begin(), out.perm.end(),
                   [&](int lhs, int rhs) { return r[lhs] < r[rhs]; });

  std::vector<long long> sorted(m);
  for (int t = 0; t < m; ++t) sorted[t] = r[out.perm[t]];
  if (!property_one_sorted(sorted))
    throw InternalError("prefix row-sum bounds do not hold on entry");

  if (property_two(sorted)) {
    out.s = std::move(sorted);
    return out;
  }

  // Only reachable when fewer than n/2 rows have sum 2; then some column has
  // at most as many -1s as +1s across those rows, and flipping it leaves
  // every transformed sum within the greedy precondition.
  long long twos = static_cast<long long>(std::count(r.begin(), r.end(), 2));
  if (2 * twos >= n)
    throw InternalError("greedy precondition failed with many sum-2 rows");

  int col = -1;
  for (int j = 0; j < n && col < 0; ++j) {
    long long minus = 0;
    long long plus = 0;
    for (int i = 0; i < m; ++i) {
      if (r[i] != 2) continue;
      const int entry = out.row_flips[i] * a.at(i, j) * x[j];
      (entry < 0 ? minus : plus) += 1;
    }
    if (minus <= plus) col = j;
  }
  if (col < 0) throw InternalError("no admissible column for the fix");

  out.col_flip = col;
  std::vector<long long> r2(m);
  for (int i = 0; i < m; ++i) {
    const long long flipped = r[i] - 2LL * out.row_flips[i] * a.at(i, col) * x[col];
    r2[i] = std::llabs(flipped);
    if (flipped < 0) out.row_flips[i] = static_cast<Sign>(-out.row_flips[i]);
  }
  out.s.resize(m);
  for (int t = 0; t < m; ++t) out.s[t] = r2[out.perm[t]];
  if (!property_two(out.s))
    throw InternalError("column fix failed to establish the greedy precondition");
  return out;
}

struct GreedyTrace {
  std::vector<long long> prefix;  // prefix[t] = s_1 + ... + s_t, prefix[0] = 0
  std::vector<long long> sigma;   // sigma[t] = chosen signed sum of s_{t+1}..s_m
  std::vector<Sign> y;
  bool property_two_held = false;
};

// Backwards sign assignment: take the last term positive, then prepend each
// earlier term with the sign opposing the running total. Under the greedy
// precondition the running total obeys |sigma_i| <= S_{i-1} + 2, so the final
// total lands in [-2, 2]. Without the precondition the recurrence still runs
// but the trace is marked unguaranteed.
inline GreedyTrace greedy_signs(const std::vector<long long>& s) {
  const int m = static_cast<int>(s.size());
  if (m == 0) throw DomainError("greedy_signs: empty sequence");
  for (long long v : s)
    if (v < 0) throw DomainError("greedy_signs: sums must be nonnegative");

  GreedyTrace tr;
  tr.prefix.resize(m + 1, 0);
  for (int t = 0; t < m; ++t) tr.prefix[t + 1] = tr.prefix[t] + s[t];
  tr.sigma.resize(m);
  tr.y.resize(m);
  tr.y[m - 1] = 1;
  tr.sigma[m - 1] = s[m - 1];
  for (int t = m - 1; t >= 1; --t) {
    tr.y[t - 1] = tr.sigma[t] >= 0 ? Sign{-1} : Sign{1};
    tr.sigma[t - 1] = tr.sigma[t] + tr.y[t - 1] * s[t - 1];
  }
  tr.property_two_held = property_two(s);
  if (tr.property_two_held) {
    for (int t = 0; t < m; ++t)
      if (std::llabs(tr.sigma[t]) > tr.prefix[t] + 2)
        throw InternalError("greedy running total escaped its bound");
  }
  return tr;
}

// Full pipeline: square the board, fix column switches, normalize and order
// rows, fix one column if needed, then assign row signs greedily. The result
// is recomputed from the raw board before returning; n even makes the signed
// sum even, so the imbalance is 0 or 2.
inline BalanceOutcome balance(const SignMatrix& a) {
  if (a.cols() % 2 != 0) throw ShapeError("column count must be even");
  if (a.rows() > a.cols()) throw ShapeError("more rows than columns is unsupported");

  const std::vector<Sign> x1 = property_one_column_switches(augment_to_square(a));
  const RowProfile prof = property_two_profile(a, x1);
  const GreedyTrace tr = greedy_signs(prof.s);
  if (!tr.property_two_held) throw InternalError("greedy ran without its precondition");

  BalanceOutcome out;
  out.switches.x = x1;
  if (prof.col_flip)
    out.switches.x[*prof.col_flip] = static_cast<Sign>(-out.switches.x[*prof.col_flip]);
  out.switches.y.resize(a.rows());
  for (int t = 0; t < a.rows(); ++t) {
    const int i = prof.perm[t];
    out.switches.y[i] = static_cast<Sign>(tr.y[t] * prof.row_flips[i]);
  }

  out.signed_sum = signed_sum(a, out.switches);
  if (out.signed_sum != tr.sigma[0])
    throw InternalError("recomposed switches disagree with the greedy trace");
  out.imbalance = std::llabs(out.signed_sum);
  if (out.imbalance > 2) throw InternalError("balance bound violated");
  return out;
}

}  // namespace gb
