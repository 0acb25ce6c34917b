#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "vxa/rational.hpp"

namespace vxa {

/// Dense matrix over an exact field. F must provide +, -, *, unary -, and
/// the free functions is_zero(F) and field_inv(F). Functions that must
/// materialize fresh constants take an explicit `one` so that fields whose
/// values carry ring context (number of variables, mode) work unchanged.
template <class F>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols, F fill = F())
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  F& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const F& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  void swap_rows(int a, int b) {
    for (int c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }

 private:
  int rows_, cols_;
  std::vector<F> data_;
};

/// In-place reduced row echelon form; returns the pivot columns.
template <class F>
std::vector<int> rref(Mat<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!is_zero(m.at(i, c))) { p = i; break; }
    }
    if (p < 0) continue;
    m.swap_rows(r, p);
    F inv = field_inv(m.at(r, c));
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m.at(i, c))) continue;
      F f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank(Mat<F> m) {
  return static_cast<int>(rref(m).size());
}

/// Basis of the right nullspace of m (kernel on column vectors).
template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> m, const F& one) {
  const F zero = one - one;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<F>> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[static_cast<size_t>(c)]) continue;
    std::vector<F> v(static_cast<size_t>(m.cols()), zero);
    v[static_cast<size_t>(c)] = one;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -m.at(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Inverse of a square matrix; nullopt when singular.
template <class F>
std::optional<Mat<F>> invert(const Mat<F>& m, const F& one) {
  assert(m.rows() == m.cols());
  const F zero = one - one;
  int n = m.rows();
  Mat<F> aug(n, 2 * n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
  for (int i = 0; i < n; ++i) aug.at(i, n + i) = one;
  auto pivots = rref(aug);
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(pivots.size()) <= i || pivots[i] != i) return std::nullopt;
  Mat<F> inv(n, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

inline std::optional<Mat<Rational>> invert(const Mat<Rational>& m) {
  return invert(m, Rational(1));
}

}  // namespace vxa
