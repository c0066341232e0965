#include "kslat/scalar.hpp"

#include <sstream>

namespace kslat {

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q) { return q.get_str(); }

bool recognize_rational(double x, Rational* out, long max_den, double tol) {
  if (!std::isfinite(x)) return false;
  // Continued fraction expansion with convergent tracking.
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(v);
    if (fl > 9e18 || fl < -9e18) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0;
    long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(x - approx) <= tol) {
      *out = Rational(p1, q1);
      out->canonicalize();
      return true;
    }
    double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return false;
}

long squarefree_reduce(long r, Rational* scale) {
  long s = 1;
  for (long d = 2; d * d <= r; ++d) {
    while (r % (d * d) == 0) {
      r /= d * d;
      s *= d;
    }
  }
  if (scale != nullptr) *scale *= s;
  return r;
}

Surd::Surd(Rational a, Rational b, long r)
    : a_(std::move(a)), b_(std::move(b)), r_(r) {
  if (r_ < 0) throw IncompatibleSurd("negative radicand");
  if (r_ > 0 && sgn(b_) != 0) {
    Rational scale(1);
    r_ = squarefree_reduce(r_, &scale);
    b_ *= scale;
  }
  normalize();
}

void Surd::normalize() {
  if (r_ == 1) {
    a_ += b_;
    b_ = 0;
    r_ = 0;
  }
  if (r_ == 0) b_ = 0;
  if (sgn(b_) == 0) r_ = 0;
}

long Surd::join_radicand(const Surd& x, const Surd& y) {
  if (x.r_ == 0) return y.r_;
  if (y.r_ == 0) return x.r_;
  if (x.r_ != y.r_)
    throw IncompatibleSurd("mixed radicands " + std::to_string(x.r_) + " and " +
                           std::to_string(y.r_));
  return x.r_;
}

Surd& Surd::operator+=(const Surd& o) {
  r_ = join_radicand(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  r_ = join_radicand(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  long r = join_radicand(*this, o);
  Rational na = a_ * o.a_ + b_ * o.b_ * r;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  r_ = r;
  normalize();
  return *this;
}

Surd& Surd::operator/=(const Surd& o) {
  if (o.is_zero()) throw Error("surd division by zero");
  long r = join_radicand(*this, o);
  // 1/(a + b sqrt r) = (a - b sqrt r) / (a^2 - b^2 r)
  Rational den = o.a_ * o.a_ - o.b_ * o.b_ * r;
  Surd inv((o.a_) / den, (-o.b_) / den, r);
  return *this *= inv;
}

int Surd::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against b^2 r.
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * r_;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  // |a| dominates iff a^2 > b^2 r.
  return c > 0 ? sa : sb;
}

double Surd::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(r_));
}

std::string Surd::str() const {
  if (is_rational()) return a_.get_str();
  std::ostringstream os;
  bool have_a = sgn(a_) != 0;
  if (have_a) os << a_.get_str();
  if (sgn(b_) > 0 && have_a) os << "+";
  if (b_ == -1) {
    os << "-";
  } else if (b_ != 1) {
    os << b_.get_str() << "*";
  }
  os << "sqrt(" << r_ << ")";
  return os.str();
}

Surd abs(const Surd& x) { return x.sign() < 0 ? -x : x; }

XComplex& XComplex::operator/=(const XComplex& o) {
  Surd n = o.norm2();
  if (n.is_zero()) throw Error("complex division by zero");
  XComplex num = *this * o.conj();
  re = num.re / n;
  im = num.im / n;
  return *this;
}

std::string XComplex::str() const {
  if (im.is_zero()) return re.str();
  return "(" + re.str() + ")+(" + im.str() + ")i";
}

}  // namespace kslat
