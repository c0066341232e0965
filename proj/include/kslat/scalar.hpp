#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "kslat/errors.hpp"

namespace kslat {

using Rational = mpq_class;

double to_double(const Rational& q);
std::string to_string(const Rational& q);

// Nearest rational p/q with q <= max_den and |x - p/q| <= tol, via continued
// fractions. Returns false when no such approximant exists.
bool recognize_rational(double x, Rational* out, long max_den = 1000000000L,
                        double tol = 1e-9);

// Exact real scalar a + b*sqrt(r) in the quadratic field Q(sqrt r).
// Invariants: r is squarefree; b == 0 implies r == 0; r == 0 implies b == 0.
// Mixing two values with distinct nonzero radicands throws IncompatibleSurd.
class Surd {
 public:
  Surd() : a_(0), b_(0), r_(0) {}
  Surd(long v) : a_(v), b_(0), r_(0) {}  // NOLINT(runtime/explicit)
  Surd(const Rational& v) : a_(v), b_(0), r_(0) {}  // NOLINT
  Surd(Rational a, Rational b, long r);

  static Surd sqrt_of(long r) { return Surd(Rational(0), Rational(1), r); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  long radicand() const { return r_; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  int sign() const;
  double to_double() const;
  std::string str() const;

  Surd operator-() const { return Surd(-a_, -b_, r_); }
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);

  friend Surd operator+(Surd x, const Surd& y) { return x += y; }
  friend Surd operator-(Surd x, const Surd& y) { return x -= y; }
  friend Surd operator*(Surd x, const Surd& y) { return x *= y; }
  friend Surd operator/(Surd x, const Surd& y) { return x /= y; }
  friend bool operator==(const Surd& x, const Surd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.r_ == y.r_;
  }
  friend bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }
  friend bool operator<(const Surd& x, const Surd& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator>(const Surd& x, const Surd& y) { return y < x; }
  friend bool operator<=(const Surd& x, const Surd& y) { return !(y < x); }
  friend bool operator>=(const Surd& x, const Surd& y) { return !(x < y); }

 private:
  // Common radicand for a binary operation, adopting the nonzero one.
  static long join_radicand(const Surd& x, const Surd& y);
  void normalize();

  Rational a_, b_;
  long r_;
};

Surd abs(const Surd& x);

// Exact complex scalar over Q(sqrt r).
struct XComplex {
  Surd re, im;

  XComplex() = default;
  XComplex(long v) : re(v) {}  // NOLINT(runtime/explicit)
  XComplex(Surd r) : re(std::move(r)) {}  // NOLINT(runtime/explicit)
  XComplex(Surd r, Surd i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  XComplex conj() const { return XComplex(re, -im); }
  Surd norm2() const { return re * re + im * im; }
  std::complex<double> to_std() const {
    return {re.to_double(), im.to_double()};
  }
  std::string str() const;

  XComplex operator-() const { return XComplex(-re, -im); }
  XComplex& operator+=(const XComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  XComplex& operator-=(const XComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  XComplex& operator*=(const XComplex& o) {
    Surd nre = re * o.re - im * o.im;
    Surd nim = re * o.im + im * o.re;
    re = std::move(nre);
    im = std::move(nim);
    return *this;
  }
  XComplex& operator/=(const XComplex& o);

  friend XComplex operator+(XComplex x, const XComplex& y) { return x += y; }
  friend XComplex operator-(XComplex x, const XComplex& y) { return x -= y; }
  friend XComplex operator*(XComplex x, const XComplex& y) { return x *= y; }
  friend XComplex operator/(XComplex x, const XComplex& y) { return x /= y; }
  friend bool operator==(const XComplex& x, const XComplex& y) {
    return x.re == y.re && x.im == y.im;
  }
  friend bool operator!=(const XComplex& x, const XComplex& y) {
    return !(x == y);
  }
};

// Reduces r to its squarefree part, folding extracted squares into `scale`.
long squarefree_reduce(long r, Rational* scale);

}  // namespace kslat
