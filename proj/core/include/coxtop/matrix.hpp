#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxtop/cyclo.hpp"
#include "coxtop/errors.hpp"
#include "coxtop/golden.hpp"
#include "coxtop/rational.hpp"

namespace coxtop {

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
};

template <>
struct FieldTraits<Golden> {
  static Golden zero() { return Golden(); }
  static Golden one() { return Golden(1); }
  static bool is_zero(const Golden& x) { return x.is_zero(); }
};

template <>
struct FieldTraits<Cyclo> {
  static Cyclo zero() { return Cyclo(0); }
  static Cyclo one() { return Cyclo(1); }
  static bool is_zero(const Cyclo& x) { return x.is_zero(); }
};

template <class F>
class Matrix {
  using T = FieldTraits<F>;

 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), d_(static_cast<size_t>(rows) * cols, T::zero()) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T::one();
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  F& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
  const F& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

  std::vector<F> column(int j) const {
    std::vector<F> v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw InputError("matrix product: dimension mismatch");
    Matrix p(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const F& x = a(i, k);
        if (T::is_zero(x)) continue;
        for (int j = 0; j < b.c_; ++j) p(i, j) += F(x * b(k, j));
      }
    return p;
  }

  friend std::vector<F> operator*(const Matrix& a, const std::vector<F>& v) {
    if (a.c_ != static_cast<int>(v.size())) throw InputError("matrix-vector product: dimension mismatch");
    std::vector<F> out(a.r_, T::zero());
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < a.c_; ++j)
        if (!T::is_zero(a(i, j))) out[i] += F(a(i, j) * v[j]);
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (size_t i = 0; i < a.d_.size(); ++i) a.d_[i] += b.d_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (size_t i = 0; i < a.d_.size(); ++i) a.d_[i] -= b.d_[i];
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<int> rref_in_place() {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < c_ && r < r_; ++c) {
      int p = r;
      while (p < r_ && T::is_zero((*this)(p, c))) ++p;
      if (p == r_) continue;
      if (p != r)
        for (int k = 0; k < c_; ++k) std::swap((*this)(p, k), (*this)(r, k));
      F inv = F(T::one() / (*this)(r, c));
      for (int k = c; k < c_; ++k) (*this)(r, k) = F((*this)(r, k) * inv);
      for (int i = 0; i < r_; ++i) {
        if (i == r || T::is_zero((*this)(i, c))) continue;
        F f = (*this)(i, c);
        for (int k = c; k < c_; ++k)
          if (!T::is_zero((*this)(r, k))) (*this)(i, k) -= F(f * (*this)(r, k));
      }
      piv.push_back(c);
      ++r;
    }
    return piv;
  }

  Matrix rref() const {
    Matrix m = *this;
    m.rref_in_place();
    return m;
  }

  int rank() const {
    Matrix m = *this;
    return static_cast<int>(m.rref_in_place().size());
  }

  /// Echelonized basis: vector k has 1 in the k-th free column and 0 in the
  /// other free columns.
  std::vector<std::vector<F>> kernel() const {
    Matrix m = *this;
    std::vector<int> piv = m.rref_in_place();
    std::vector<char> is_piv(c_, 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<std::vector<F>> basis;
    for (int f = 0; f < c_; ++f) {
      if (is_piv[f]) continue;
      std::vector<F> v(c_, T::zero());
      v[f] = T::one();
      for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F(-m(static_cast<int>(i), f));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::vector<std::vector<F>> eigenspace(const F& lambda) const {
    if (r_ != c_) throw InputError("eigenspace of a non-square matrix");
    Matrix m = *this;
    for (int i = 0; i < r_; ++i) m(i, i) -= lambda;
    return m.kernel();
  }

  F det() const {
    if (r_ != c_) throw InputError("determinant of a non-square matrix");
    Matrix m = *this;
    F d = T::one();
    for (int c = 0; c < c_; ++c) {
      int p = c;
      while (p < r_ && T::is_zero(m(p, c))) ++p;
      if (p == r_) return T::zero();
      if (p != c) {
        for (int k = 0; k < c_; ++k) std::swap(m(p, k), m(c, k));
        d = F(-d);
      }
      d = F(d * m(c, c));
      F inv = F(T::one() / m(c, c));
      for (int i = c + 1; i < r_; ++i) {
        if (T::is_zero(m(i, c))) continue;
        F f = F(m(i, c) * inv);
        for (int k = c; k < c_; ++k) m(i, k) -= F(f * m(c, k));
      }
    }
    return d;
  }

  Matrix inverse() const {
    if (r_ != c_) throw InputError("inverse of a non-square matrix");
    Matrix a(r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) a(i, j) = (*this)(i, j);
      a(i, c_ + i) = T::one();
    }
    std::vector<int> piv = a.rref_in_place();
    if (static_cast<int>(piv.size()) < r_ || piv[r_ - 1] >= c_) throw InputError("matrix is singular");
    Matrix inv(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) inv(i, j) = a(i, c_ + j);
    return inv;
  }

  /// Coordinates y with sum_j y_j * basis[j] = v, if v lies in the span.
  static std::optional<std::vector<F>> coordinates(const std::vector<std::vector<F>>& basis,
                                                   const std::vector<F>& v) {
    const int n = static_cast<int>(v.size()), k = static_cast<int>(basis.size());
    Matrix a(n, k + 1);
    for (int j = 0; j < k; ++j) {
      if (static_cast<int>(basis[j].size()) != n) throw InputError("coordinates: dimension mismatch");
      for (int i = 0; i < n; ++i) a(i, j) = basis[j][i];
    }
    for (int i = 0; i < n; ++i) a(i, k) = v[i];
    std::vector<int> piv = a.rref_in_place();
    if (!piv.empty() && piv.back() == k) return std::nullopt;
    std::vector<F> y(k, T::zero());
    for (size_t i = 0; i < piv.size(); ++i) y[piv[i]] = a(static_cast<int>(i), k);
    return y;
  }

  template <class G, class Fn>
  Matrix<G> map(Fn fn) const {
    Matrix<G> out(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) out(i, j) = fn((*this)(i, j));
    return out;
  }

 private:
  void check_same(const Matrix& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw InputError("matrix sum: dimension mismatch");
  }

  int r_ = 0;
  int c_ = 0;
  std::vector<F> d_;
};

/// Fraction-free rank and determinant over Q (rows scaled to integers, then
/// Bareiss elimination).
int rank_bareiss(const Matrix<Rational>& m);
Rational det_bareiss(const Matrix<Rational>& m);

Matrix<Cyclo> to_cyclo(const Matrix<Golden>& m);
Matrix<Cyclo> to_cyclo(const Matrix<Rational>& m);

/// Characteristic polynomial det(xI - M), constant term first
/// (Faddeev-LeVerrier).
template <class F>
std::vector<F> characteristic_polynomial(const Matrix<F>& m) {
  using T = FieldTraits<F>;
  const int n = m.rows();
  std::vector<F> c(n + 1, T::zero());
  c[n] = T::one();
  Matrix<F> mk(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    Matrix<F> next = m * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    Matrix<F> am = m * mk;
    F tr = T::zero();
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = F(-tr / F(k));
  }
  return c;
}

}  // namespace coxtop
