#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gb/errors.hpp"

namespace gb {

// Entries and switch states are signs: +1 = light on / switch untouched,
// -1 = light off / switch thrown. Pressing a switch twice cancels, so only
// the net parity is modeled.
using Sign = std::int8_t;

inline Sign check_sign(long long v) {
  if (v != 1 && v != -1) throw DomainError("sign value must be +1 or -1");
  return static_cast<Sign>(v);
}

// m x n board of +-1 lights, row-major.
class SignMatrix {
 public:
  SignMatrix(int rows, int cols, Sign fill = 1)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 1 || cols < 1) throw ShapeError("board dimensions must be positive");
    check_sign(fill);
  }

  static SignMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows[0].empty()) throw ShapeError("board dimensions must be positive");
    SignMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols())
        throw ShapeError("ragged row in board literal");
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = check_sign(rows[i][j]);
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Sign& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  Sign at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<Sign> a_;
};

// Column switches x (length n) and row switches y (length m).
struct SwitchPair {
  std::vector<Sign> x;
  std::vector<Sign> y;

  friend bool operator==(const SwitchPair&, const SwitchPair&) = default;
};

// n x n x n cube of +-1 lights. Storage index is i + n*j + n*n*k.
class SignCube {
 public:
  explicit SignCube(int side, Sign fill = 1)
      : side_(side), a_(static_cast<std::size_t>(side) * side * side, fill) {
    if (side < 1) throw ShapeError("cube side must be positive");
    check_sign(fill);
  }

  int side() const { return side_; }
  Sign& at(int i, int j, int k) { return a_[index(i, j, k)]; }
  Sign at(int i, int j, int k) const { return a_[index(i, j, k)]; }

  friend bool operator==(const SignCube&, const SignCube&) = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(side_) * j +
           static_cast<std::size_t>(side_) * side_ * k;
  }

  int side_;
  std::vector<Sign> a_;
};

// One sign vector per axis, each of length n.
struct PlaneSwitches {
  std::vector<Sign> sx;
  std::vector<Sign> sy;
  std::vector<Sign> sz;

  friend bool operator==(const PlaneSwitches&, const PlaneSwitches&) = default;
};

struct BalanceOutcome {
  SwitchPair switches;
  long long signed_sum = 0;
  long long imbalance = 0;  // |signed_sum|
};

// Signed sum of y_i * a_ij * x_j over the whole board. The imbalance is its
// absolute value; the signed form is kept because row negation flips it.
inline long long signed_sum(const SignMatrix& a, const SwitchPair& s) {
  if (static_cast<int>(s.x.size()) != a.cols() || static_cast<int>(s.y.size()) != a.rows())
    throw ShapeError("switch vector lengths do not match board dimensions");
  long long total = 0;
  for (int i = 0; i < a.rows(); ++i) {
    long long row = 0;
    for (int j = 0; j < a.cols(); ++j) row += static_cast<long long>(a.at(i, j)) * s.x[j];
    total += static_cast<long long>(s.y[i]) * row;
  }
  return total;
}

inline long long imbalance(const SignMatrix& a, const SwitchPair& s) {
  long long v = signed_sum(a, s);
  return v < 0 ? -v : v;
}

inline SignMatrix apply_switches(const SignMatrix& a, const SwitchPair& s) {
  if (static_cast<int>(s.x.size()) != a.cols() || static_cast<int>(s.y.size()) != a.rows())
    throw ShapeError("switch vector lengths do not match board dimensions");
  SignMatrix out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.at(i, j) = static_cast<Sign>(a.at(i, j) * s.x[j] * s.y[i]);
  return out;
}

inline long long signed_sum(const SignCube& c) {
  long long total = 0;
  const int n = c.side();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) total += c.at(i, j, k);
  return total;
}

inline long long imbalance(const SignCube& c) {
  long long v = signed_sum(c);
  return v < 0 ? -v : v;
}

inline SignCube apply_plane_switches(const SignCube& c, const PlaneSwitches& s) {
  const int n = c.side();
  if (static_cast<int>(s.sx.size()) != n || static_cast<int>(s.sy.size()) != n ||
      static_cast<int>(s.sz.size()) != n)
    throw ShapeError("plane switch lengths do not match cube side");
  SignCube out = c;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        out.at(i, j, k) = static_cast<Sign>(c.at(i, j, k) * s.sx[i] * s.sy[j] * s.sz[k]);
  return out;
}

}  // namespace gb
