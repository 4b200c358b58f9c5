#ifndef SKV_MATRIX_HPP
#define SKV_MATRIX_HPP

#include <cassert>
#include <vector>

namespace skv {

/// Small dense matrix over an arbitrary scalar (rationals, field
/// elements, complex). Multiplication skips zero entries, which keeps
/// products of sparse operators cheap under exact arithmetic.
template <class S>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& at(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }
  const S& at(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  bool is_zero() const {
    for (const S& x : a_)
      if (!skv::is_zero(x)) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (S& x : m.a_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }

  Matrix& scale(const S& s) {
    for (S& x : a_) x = x * s;
    return *this;
  }
  friend Matrix operator*(const S& s, Matrix m) { return m.scale(s); }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    assert(x.cols_ == y.rows_);
    Matrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const S& xik = x.at(i, k);
        if (skv::is_zero(xik)) continue;
        for (int j = 0; j < y.cols_; ++j) {
          const S& ykj = y.at(k, j);
          if (skv::is_zero(ykj)) continue;
          r.at(i, j) += xik * ykj;
        }
      }
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  S trace() const {
    assert(rows_ == cols_);
    S t{};
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  Matrix transposed() const {
    Matrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
  }

  /// Trace of (*this) * o without forming the product.
  S trace_product(const Matrix& o) const {
    assert(cols_ == o.rows_ && rows_ == o.cols_);
    S t{};
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        const S& x = at(i, j);
        if (skv::is_zero(x)) continue;
        const S& y = o.at(j, i);
        if (skv::is_zero(y)) continue;
        t += x * y;
      }
    return t;
  }

 private:
  int rows_, cols_;
  std::vector<S> a_;
};

}  // namespace skv

#endif
