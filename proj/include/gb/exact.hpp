#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

#include "gb/errors.hpp"

namespace gb {

// Exact arithmetic throughout: membership of a component in {-1, +1} must be
// decidable with no tolerance, otherwise floating components are misclassified.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 1) throw ShapeError("matrix must have c >= 1 columns");
  }

  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) throw ShapeError("use RationalMatrix(0, c) for empty matrices");
    RationalMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (rows[i].size() != rows[0].size()) throw ShapeError("ragged matrix literal");
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

 private:
  int rows_;
  int cols_;
  std::vector<Rational> a_;
};

namespace detail {

// Thrown inside the 128-bit fast path; the caller retries with cpp_int.
struct Int128Overflow {};

struct CheckedI128 {
  __int128 v = 0;

  CheckedI128() = default;
  CheckedI128(__int128 x) : v(x) {}  // NOLINT: implicit by design

  friend CheckedI128 operator*(CheckedI128 a, CheckedI128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Int128Overflow{};
    return CheckedI128(r);
  }
  friend CheckedI128 operator-(CheckedI128 a, CheckedI128 b) {
    __int128 r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Int128Overflow{};
    return CheckedI128(r);
  }
  friend CheckedI128 operator+(CheckedI128 a, CheckedI128 b) {
    __int128 r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Int128Overflow{};
    return CheckedI128(r);
  }
  friend CheckedI128 operator/(CheckedI128 a, CheckedI128 b) { return CheckedI128(a.v / b.v); }
  friend CheckedI128 operator-(CheckedI128 a) {
    __int128 r;
    if (__builtin_sub_overflow(static_cast<__int128>(0), a.v, &r)) throw Int128Overflow{};
    return CheckedI128(r);
  }
  friend bool operator==(CheckedI128 a, CheckedI128 b) { return a.v == b.v; }
  friend bool operator!=(CheckedI128 a, CheckedI128 b) { return a.v != b.v; }
  friend bool operator<(CheckedI128 a, CheckedI128 b) { return a.v < b.v; }
};

inline CheckedI128 abs_of(CheckedI128 a) { return a.v < 0 ? -a : a; }
inline Integer abs_of(const Integer& a) { return boost::multiprecision::abs(a); }

inline Integer to_integer(CheckedI128 a) {
  bool neg = a.v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(a.v + 1)) + 1
                              : static_cast<unsigned __int128>(a.v);
  Integer r = static_cast<std::uint64_t>(mag >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(mag);
  return neg ? Integer(-r) : r;
}

inline Integer to_integer(const Integer& a) { return a; }

template <class I>
struct EchelonResult {
  std::vector<std::vector<I>> u;  // forward echelon; rows >= rank are zero
  std::vector<int> pivot_cols;    // ascending
};

// Fraction-free forward elimination (Bareiss). Intermediate entries are
// minors of the input, so the division by the previous pivot is exact and
// magnitudes stay polynomially bounded. Pivoting: per column, the row with
// the largest absolute entry; columns with no usable pivot become free.
template <class I>
EchelonResult<I> bareiss_echelon(std::vector<std::vector<I>> t, int cols) {
  const int r = static_cast<int>(t.size());
  EchelonResult<I> out;
  I prev(1);
  bool prev_is_one = true;
  int rank = 0;
  for (int col = 0; col < cols && rank < r; ++col) {
    int pr = -1;
    for (int i = rank; i < r; ++i)
      if (t[i][col] != I(0) && (pr < 0 || abs_of(t[pr][col]) < abs_of(t[i][col]))) pr = i;
    if (pr < 0) continue;  // free column
    std::swap(t[rank], t[pr]);
    const I p = t[rank][col];
    for (int i = rank + 1; i < r; ++i) {
      const I f = t[i][col];
      for (int j = col + 1; j < cols; ++j) {
        I num = t[i][j] * p - f * t[rank][j];
        t[i][j] = prev_is_one ? std::move(num) : num / prev;
      }
      t[i][col] = I(0);
    }
    prev = p;
    prev_is_one = false;
    out.pivot_cols.push_back(col);
    ++rank;
  }
  out.u = std::move(t);
  return out;
}

// Null vector from the echelon form. The lowest-index free column gets the
// final pivot value D; pivot components come from integer back-substitution,
// whose divisions are exact because the solution components are (by Cramer)
// minors of the echelon system. Any arithmetic slip is caught by the final
// verification in the caller.
template <class I>
std::vector<Integer> null_vector_from_echelon(const EchelonResult<I>& e, int cols) {
  const int rank = static_cast<int>(e.pivot_cols.size());
  std::vector<bool> is_pivot(cols, false);
  for (int q : e.pivot_cols) is_pivot[q] = true;
  int free_col = -1;
  for (int j = 0; j < cols; ++j)
    if (!is_pivot[j]) {
      free_col = j;
      break;
    }
  if (free_col < 0) throw InternalError("full column rank despite r < c");

  const I d = rank > 0 ? e.u[rank - 1][e.pivot_cols[rank - 1]] : I(1);
  std::vector<I> z(rank, I(0));
  for (int t = rank - 1; t >= 0; --t) {
    I acc = e.u[t][free_col] * d;
    for (int s = t + 1; s < rank; ++s) acc = acc + e.u[t][e.pivot_cols[s]] * z[s];
    z[t] = (-acc) / e.u[t][e.pivot_cols[t]];
  }

  std::vector<Integer> v(cols, Integer(0));
  v[free_col] = to_integer(d);
  for (int t = 0; t < rank; ++t) v[e.pivot_cols[t]] = to_integer(z[t]);

  // Normalize: divide by the gcd and orient the free component positive, so
  // the result is deterministic and as small as possible.
  Integer g = 0;
  for (const Integer& x : v) g = boost::multiprecision::gcd(g, x);
  if (g > 1)
    for (Integer& x : v) x /= g;
  if (v[free_col] < 0)
    for (Integer& x : v) x = -x;
  return v;
}

// Shared elimination core for integer input rows. Tries the 128-bit
// representation first and redoes everything in cpp_int when any product
// overflows, which for sign matrices essentially never happens. The result
// is always verified against the input by exact multiplication.
inline std::vector<Integer> nullspace_core(const std::vector<std::vector<long long>>& rows,
                                           int cols) {
  const int r = static_cast<int>(rows.size());
  std::vector<Integer> v;
  bool have_v = false;
  try {
    std::vector<std::vector<CheckedI128>> t(r, std::vector<CheckedI128>(cols));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < cols; ++j) t[i][j] = CheckedI128(static_cast<__int128>(rows[i][j]));
    v = null_vector_from_echelon(bareiss_echelon(std::move(t), cols), cols);
    have_v = true;
  } catch (const Int128Overflow&) {
  }
  if (!have_v) {
    std::vector<std::vector<Integer>> t(r, std::vector<Integer>(cols));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < cols; ++j) t[i][j] = rows[i][j];
    v = null_vector_from_echelon(bareiss_echelon(std::move(t), cols), cols);
  }

  bool fits_i128 = true;
  for (const Integer& e : v)
    if (boost::multiprecision::msb(boost::multiprecision::abs(e) + 1) > 120) fits_i128 = false;

  bool verified = false;
  if (fits_i128) {
    try {
      for (int i = 0; i < r; ++i) {
        CheckedI128 acc{0};
        for (int j = 0; j < cols; ++j)
          acc = acc + CheckedI128(static_cast<__int128>(rows[i][j])) *
                          CheckedI128(static_cast<__int128>(v[j]));
        if (acc != CheckedI128{0}) throw InternalError("null vector verification failed");
      }
      verified = true;
    } catch (const Int128Overflow&) {
    }
  }
  if (!verified) {
    for (int i = 0; i < r; ++i) {
      Integer acc = 0;
      for (int j = 0; j < cols; ++j) acc += Integer(rows[i][j]) * v[j];
      if (acc != 0) throw InternalError("null vector verification failed");
    }
  }
  bool nonzero = false;
  for (const Integer& e : v) nonzero = nonzero || e != 0;
  if (!nonzero) throw InternalError("null vector is zero");
  return v;
}

inline std::vector<Integer> nullspace_core_big(const std::vector<std::vector<Integer>>& rows,
                                               int cols) {
  std::vector<Integer> v = null_vector_from_echelon(bareiss_echelon(rows, cols), cols);
  bool nonzero = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Integer acc = 0;
    for (int j = 0; j < cols; ++j) acc += rows[i][j] * v[j];
    if (acc != 0) throw InternalError("null vector verification failed");
  }
  for (const Integer& e : v) nonzero = nonzero || e != 0;
  if (!nonzero) throw InternalError("null vector is zero");
  return v;
}

}  // namespace detail

// A nonzero v with M*v = 0, exact. Requires strictly fewer rows than columns
// so the null space is guaranteed nontrivial. The returned vector is an
// arbitrary (deterministic) scaling; callers must not depend on its length.
inline RationalVector nullspace_vector(const RationalMatrix& m) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;

  const int r = m.rows();
  const int c = m.cols();
  if (r >= c) throw DomainError("nullspace_vector requires fewer rows than columns");

  // Scale each row to integers; row scaling does not change the null space.
  std::vector<std::vector<Integer>> rows(r, std::vector<Integer>(c));
  bool fits_ll = true;
  for (int i = 0; i < r; ++i) {
    Integer l = 1;
    for (int j = 0; j < c; ++j) l = lcm(l, denominator(m.at(i, j)));
    for (int j = 0; j < c; ++j) {
      rows[i][j] = numerator(m.at(i, j)) * (l / denominator(m.at(i, j)));
      if (boost::multiprecision::msb(boost::multiprecision::abs(rows[i][j]) + 1) > 60)
        fits_ll = false;
    }
  }

  std::vector<Integer> v;
  if (fits_ll) {
    std::vector<std::vector<long long>> ll(r, std::vector<long long>(c));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) ll[i][j] = static_cast<long long>(rows[i][j]);
    v = detail::nullspace_core(ll, c);
  } else {
    v = detail::nullspace_core_big(rows, c);
  }

  RationalVector out(c);
  for (int j = 0; j < c; ++j) out[j] = Rational(v[j]);
  return out;
}

struct StepResult {
  Rational lambda;
  RationalVector x;
};

// Largest lambda >= 0 keeping x + lambda*d inside [-1, 1]^n, and the point
// reached. Components with d_i = 0 never constrain the step.
inline StepResult max_step(const RationalVector& x, const RationalVector& d) {
  if (x.size() != d.size()) throw ShapeError("max_step: vector lengths differ");
  for (const Rational& xi : x)
    if (xi < -1 || xi > 1) throw DomainError("max_step: point outside the unit cube");

  bool found = false;
  Rational best;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d[i] == 0) continue;
    Rational cand = d[i] > 0 ? Rational((1 - x[i]) / d[i]) : Rational((-1 - x[i]) / d[i]);
    if (!found || cand < best) {
      best = std::move(cand);
      found = true;
    }
  }
  if (!found) throw DomainError("max_step: direction is zero");

  StepResult res;
  res.lambda = best;
  res.x.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    res.x[i] = d[i] == 0 ? x[i] : Rational(x[i] + best * d[i]);
  return res;
}

}  // namespace gb
