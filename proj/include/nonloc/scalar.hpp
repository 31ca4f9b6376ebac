#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace nonloc {

// Arbitrary-precision rational; GMP keeps every value canonical (lowest
// terms, positive denominator).
using Rat = mpq_class;

//------------------------------------------------------------------------------
// Quad: exact element of Q[sqrt(2)]
//------------------------------------------------------------------------------

// Value a + b*sqrt(2) with rational a, b. Closed under +, -, *, / and
// ordered without rounding: the sign of a + b*sqrt(2) is decided by
// comparing a^2 against 2*b^2 (sqrt(2) is irrational, so the two terms
// never cancel exactly unless both are zero).
struct Quad {
  Rat a;
  Rat b;

  Quad() : a(0), b(0) {}
  Quad(long n) : a(n), b(0) {}
  Quad(const Rat &rational_part) : a(rational_part), b(0) {}
  Quad(Rat rational_part, Rat sqrt2_part)
      : a(std::move(rational_part)), b(std::move(sqrt2_part)) {}

  static Quad sqrt2() { return Quad(Rat(0), Rat(1)); }
  static Quad of(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return Quad(std::move(r));
  }

  bool is_rational() const { return b == 0; }
  bool is_zero() const { return a == 0 && b == 0; }

  // Exact sign in {-1, 0, +1}.
  int sign() const;

  Quad operator-() const { return Quad(-a, -b); }
  Quad &operator+=(const Quad &o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Quad &operator-=(const Quad &o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  Quad &operator*=(const Quad &o);
  Quad &operator/=(const Quad &o);

  // Multiplicative inverse; throws on zero.
  Quad inverse() const;

  double to_double() const;

  // Canonical form "p/q+r/s*sqrt2" (or "p/q-r/s*sqrt2"), both terms always
  // present so serialized output is byte-stable.
  std::string str() const;

  // Parses the canonical form as well as bare rationals like "3/4" or "2".
  static Quad parse(const std::string &text);
};

Quad operator+(Quad lhs, const Quad &rhs);
Quad operator-(Quad lhs, const Quad &rhs);
Quad operator*(Quad lhs, const Quad &rhs);
Quad operator/(Quad lhs, const Quad &rhs);

bool operator==(const Quad &lhs, const Quad &rhs);
bool operator!=(const Quad &lhs, const Quad &rhs);
bool operator<(const Quad &lhs, const Quad &rhs);
bool operator<=(const Quad &lhs, const Quad &rhs);
bool operator>(const Quad &lhs, const Quad &rhs);
bool operator>=(const Quad &lhs, const Quad &rhs);

std::ostream &operator<<(std::ostream &os, const Quad &q);

//------------------------------------------------------------------------------
// Scalar: two-backend number (exact Q[sqrt2] or binary64)
//------------------------------------------------------------------------------

enum class Backend { exact, floating };

// Default tolerance for float-backend equality checks.
inline constexpr double kFloatEps = 1e-12;

// All probabilities, functionals and matrix entries live in this type.
// Exact-backend arithmetic is closed and exact; mixing an exact and a
// float operand demotes the result to the float backend.
class Scalar {
 public:
  Scalar() : mode_(Backend::exact), q_(), f_(0) {}
  Scalar(long n) : mode_(Backend::exact), q_(n), f_(0) {}
  Scalar(Quad q) : mode_(Backend::exact), q_(std::move(q)), f_(0) {}
  Scalar(Rat r) : mode_(Backend::exact), q_(std::move(r)), f_(0) {}

  static Scalar exact(long num, long den = 1) {
    return Scalar(Quad::of(num, den));
  }
  static Scalar exact(Rat a, Rat b = Rat(0)) {
    return Scalar(Quad(std::move(a), std::move(b)));
  }
  static Scalar sqrt2() { return Scalar(Quad::sqrt2()); }
  static Scalar floating(double v) {
    Scalar s;
    s.mode_ = Backend::floating;
    s.f_ = v;
    return s;
  }

  Backend mode() const { return mode_; }
  bool is_exact() const { return mode_ == Backend::exact; }

  // Exact-backend accessor; throws if the scalar is floating.
  const Quad &quad() const;

  double to_double() const {
    return mode_ == Backend::exact ? q_.to_double() : f_;
  }

  Scalar to_backend(Backend target) const;

  int sign() const;
  bool is_zero(double eps = kFloatEps) const;
  // Exact equality on exact pairs, |x-y| <= eps otherwise.
  bool equals(const Scalar &o, double eps = kFloatEps) const;

  Scalar operator-() const;
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o);

  std::string str() const;

 private:
  Backend mode_;
  Quad q_;
  double f_;
};

Scalar operator+(Scalar lhs, const Scalar &rhs);
Scalar operator-(Scalar lhs, const Scalar &rhs);
Scalar operator*(Scalar lhs, const Scalar &rhs);
Scalar operator/(Scalar lhs, const Scalar &rhs);

std::ostream &operator<<(std::ostream &os, const Scalar &s);

//------------------------------------------------------------------------------
// Complex scalar
//------------------------------------------------------------------------------

struct Complex {
  Scalar re;
  Scalar im;

  Complex() = default;
  Complex(Scalar real) : re(std::move(real)), im(Scalar::exact(0)) {}
  Complex(Scalar real, Scalar imag) : re(std::move(real)), im(std::move(imag)) {}

  static Complex exact(long num, long den = 1) {
    return Complex(Scalar::exact(num, den));
  }
  static Complex floating(double re, double im = 0.0) {
    return Complex(Scalar::floating(re), Scalar::floating(im));
  }

  bool is_exact() const { return re.is_exact() && im.is_exact(); }
  bool is_zero(double eps = kFloatEps) const {
    return re.is_zero(eps) && im.is_zero(eps);
  }
  bool equals(const Complex &o, double eps = kFloatEps) const {
    return re.equals(o.re, eps) && im.equals(o.im, eps);
  }

  Complex conj() const { return Complex(re, -im); }
  Scalar norm2() const { return re * re + im * im; }
  double abs() const;

  Complex operator-() const { return Complex(-re, -im); }
  Complex &operator+=(const Complex &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex &operator-=(const Complex &o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex &operator*=(const Complex &o);
  Complex &operator/=(const Complex &o);
};

Complex operator+(Complex lhs, const Complex &rhs);
Complex operator-(Complex lhs, const Complex &rhs);
Complex operator*(Complex lhs, const Complex &rhs);
Complex operator/(Complex lhs, const Complex &rhs);

std::ostream &operator<<(std::ostream &os, const Complex &z);

}  // namespace nonloc
