#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "kslat/errors.hpp"
#include "kslat/scalar.hpp"

namespace kslat {

using Complex = std::complex<double>;

// Scalar policy shared by the float and the exact arithmetic mode.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Complex> {
  using Real = double;
  static constexpr bool exact = false;
  static Complex conj(const Complex& z) { return std::conj(z); }
  static double abs_approx(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z, double tol) {
    return std::abs(z) <= tol;
  }
  static Complex from_real(double x) { return Complex(x, 0.0); }
  static double real_part(const Complex& z) { return z.real(); }
  static double imag_part(const Complex& z) { return z.imag(); }
  static Complex from_int(long v) { return Complex(double(v), 0.0); }
  static double to_double(double x) { return x; }
  static Complex to_complex(const Complex& z) { return z; }
};

template <>
struct ScalarOps<XComplex> {
  using Real = Surd;
  static constexpr bool exact = true;
  static XComplex conj(const XComplex& z) { return z.conj(); }
  static double abs_approx(const XComplex& z) { return std::abs(z.to_std()); }
  static bool is_zero(const XComplex& z, double /*tol*/) { return z.is_zero(); }
  static XComplex from_real(const Surd& x) { return XComplex(x); }
  static Surd real_part(const XComplex& z) { return z.re; }
  static Surd imag_part(const XComplex& z) { return z.im; }
  static XComplex from_int(long v) { return XComplex(Surd(v)); }
  static double to_double(const Surd& x) { return x.to_double(); }
  static Complex to_complex(const XComplex& z) { return z.to_std(); }
};

// Dense matrix over one of the two scalar modes. Row-major.
template <class S>
class Mat {
 public:
  using Ops = ScalarOps<S>;
  using Real = typename Ops::Real;

  Mat() = default;
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols), e_(size_t(rows) * cols, S{}) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Ops::from_int(1);
    return m;
  }
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

  Mat adjoint() const {
    Mat m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = Ops::conj((*this)(i, j));
    return m;
  }

  S trace() const {
    S t{};
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    check_same_shape(o);
    for (size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same_shape(o);
    for (size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  Mat& operator*=(const S& s) {
    for (auto& x : e_) x *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const S& s) { return a *= s; }
  friend Mat operator*(const S& s, Mat a) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (Ops::is_zero(aik, 0.0)) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  Mat operator-() const {
    Mat m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
  }

  // Largest entry magnitude, evaluated in doubles for both modes.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : e_) m = std::max(m, Ops::abs_approx(x));
    return m;
  }

  // Entrywise zero test: exact in exact mode, |.| <= tol otherwise.
  bool is_zero(double tol) const {
    for (const auto& x : e_)
      if (!Ops::is_zero(x, tol)) return false;
    return true;
  }
  bool approx_equal(const Mat& o, double tol) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    return (*this - o).is_zero(tol);
  }

  Mat col(int j) const {
    Mat v(rows_, 1);
    for (int i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
    return v;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shape");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<S> e_;
};

using CMat = Mat<Complex>;
using XMat = Mat<XComplex>;

// <u, v> = u^* v for column vectors.
template <class S>
S inner(const Mat<S>& u, const Mat<S>& v) {
  if (u.rows() != v.rows() || u.cols() != 1 || v.cols() != 1)
    throw DimensionMismatch("inner product shape");
  S s{};
  for (int i = 0; i < u.rows(); ++i)
    s += ScalarOps<S>::conj(u(i, 0)) * v(i, 0);
  return s;
}

// Reduced row echelon form by Gaussian elimination with partial pivoting.
// `tol` is the pivot threshold in float mode and ignored in exact mode.
template <class S>
struct RrefResult {
  Mat<S> mat;
  std::vector<int> pivot_cols;
};

template <class S>
RrefResult<S> rref(Mat<S> a, double tol) {
  using Ops = ScalarOps<S>;
  RrefResult<S> out;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int best = -1;
    double best_abs = tol;
    for (int i = row; i < a.rows(); ++i) {
      double v = Ops::abs_approx(a(i, col));
      if constexpr (Ops::exact) {
        if (!Ops::is_zero(a(i, col), 0.0) && (best < 0 || v > best_abs)) {
          best = i;
          best_abs = v;
        }
      } else {
        if (v > best_abs) {
          best = i;
          best_abs = v;
        }
      }
    }
    if (best < 0) continue;
    if (best != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(best, j));
    S piv = a(row, col);
    for (int j = 0; j < a.cols(); ++j) a(row, j) /= piv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      S f = a(i, col);
      if (Ops::is_zero(f, tol)) continue;
      for (int j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.mat = std::move(a);
  return out;
}

template <class S>
int rank(const Mat<S>& a, double tol) {
  return int(rref(a, tol).pivot_cols.size());
}

// Columns spanning ker(A).
template <class S>
Mat<S> kernel_basis(const Mat<S>& a, double tol) {
  using Ops = ScalarOps<S>;
  auto r = rref(a, tol);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  int k = a.cols() - int(r.pivot_cols.size());
  Mat<S> basis(a.cols(), k);
  int out = 0;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, out) = Ops::from_int(1);
    for (size_t p = 0; p < r.pivot_cols.size(); ++p)
      basis(r.pivot_cols[p], out) = -r.mat(int(p), free);
    ++out;
  }
  return basis;
}

// Orthogonal projection onto the column span of V, via unnormalized
// Gram-Schmidt (no square roots, so it stays inside the exact field).
template <class S>
Mat<S> projection_onto_columns(const Mat<S>& v, double tol) {
  using Ops = ScalarOps<S>;
  std::vector<Mat<S>> basis;
  std::vector<S> norms;
  for (int j = 0; j < v.cols(); ++j) {
    Mat<S> w = v.col(j);
    for (size_t k = 0; k < basis.size(); ++k) {
      S c = inner(basis[k], w) / norms[k];
      w -= basis[k] * c;
    }
    S n2 = inner(w, w);
    if constexpr (Ops::exact) {
      if (Ops::is_zero(n2, 0.0)) continue;
    } else {
      if (Ops::abs_approx(n2) <= tol * tol) continue;
    }
    basis.push_back(std::move(w));
    norms.push_back(std::move(n2));
  }
  Mat<S> p = Mat<S>::zero(v.rows(), v.rows());
  for (size_t k = 0; k < basis.size(); ++k) {
    Mat<S> outer = basis[k] * basis[k].adjoint();
    S inv = Ops::from_int(1) / norms[k];
    p += outer * inv;
  }
  return p;
}

inline CMat to_cmat(const XMat& a) {
  CMat m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_std();
  return m;
}

}  // namespace kslat
