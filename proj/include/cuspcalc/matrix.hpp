#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

/// Small dense square matrix over a commutative ring T.
template <class T>
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n, const T& fill = T(0)) : n_(n), e_(static_cast<std::size_t>(n * n), fill) {}

  static Mat identity(int n, const T& one = T(1)) {
    Mat m(n);
    for (int k = 0; k < n; ++k) m(k, k) = one;
    return m;
  }
  static Mat scalar(int n, const T& v) { return identity(n, v); }

  int dim() const { return n_; }
  T& operator()(int r, int c) { return e_[static_cast<std::size_t>(r * n_ + c)]; }
  const T& operator()(int r, int c) const { return e_[static_cast<std::size_t>(r * n_ + c)]; }
  const std::vector<T>& entries() const { return e_; }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  T trace() const {
    T t(0);
    for (int k = 0; k < n_; ++k) t += (*this)(k, k);
    return t;
  }

  template <class F>
  auto map(F&& f) const -> Mat<decltype(f(std::declval<const T&>()))> {
    Mat<decltype(f(std::declval<const T&>()))> r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  Mat& operator+=(const Mat& o) {
    check(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  Mat& operator*=(const T& s) {
    for (auto& x : e_) x *= s;
    return *this;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(Mat a) {
    for (auto& x : a.e_) x = -x;
    return a;
  }
  friend Mat operator*(Mat a, const T& s) { return a *= s; }
  friend Mat operator*(const T& s, Mat a) {
    for (auto& x : a.e_) x = s * x;
    return a;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    a.check(b);
    Mat r(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < a.n_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

  Mat minor_matrix(int row, int col) const {
    Mat m(n_ - 1);
    for (int i = 0, r = 0; i < n_; ++i) {
      if (i == row) continue;
      for (int j = 0, c = 0; j < n_; ++j) {
        if (j == col) continue;
        m(r, c++) = (*this)(i, j);
      }
      ++r;
    }
    return m;
  }

  T det() const {
    if (n_ == 0) return T(1);
    if (n_ == 1) return e_[0];
    if (n_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    T d(0);
    for (int j = 0; j < n_; ++j) {
      if ((*this)(0, j).is_zero()) continue;
      T term = (*this)(0, j) * minor_matrix(0, j).det();
      if (j % 2 == 0) d += term; else d -= term;
    }
    return d;
  }

  Mat adjugate() const {
    Mat a(n_);
    if (n_ == 1) {
      a(0, 0) = T(1);
      return a;
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        T c = minor_matrix(j, i).det();
        a(i, j) = ((i + j) % 2 == 0) ? c : -c;
      }
    return a;
  }

  /// Inverse via adjugate; inv maps a scalar to its inverse.
  Mat inverse(const std::function<T(const T&)>& inv) const { return adjugate() * inv(det()); }

 private:
  void check(const Mat& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix dimension mismatch");
  }
  int n_ = 0;
  std::vector<T> e_;
};

}  // namespace cuspcalc
