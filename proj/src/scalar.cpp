#include "nonloc/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nonloc {

//------------------------------------------------------------------------------
// Quad
//------------------------------------------------------------------------------

int Quad::sign() const {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| with |b|*sqrt(2) via squares. Equality is
  // impossible for nonzero rationals (sqrt(2) irrational).
  const Rat lhs = a * a;
  const Rat rhs = 2 * b * b;
  if (lhs == rhs) return 0;  // only reachable when a == b == 0
  return (lhs > rhs) ? sa : sb;
}

Quad &Quad::operator*=(const Quad &o) {
  // (a1 + b1 s)(a2 + b2 s) = a1 a2 + 2 b1 b2 + (a1 b2 + b1 a2) s
  Rat na = a * o.a + 2 * b * o.b;
  Rat nb = a * o.b + b * o.a;
  a = std::move(na);
  b = std::move(nb);
  return *this;
}

Quad Quad::inverse() const {
  // 1/(a + b s) = (a - b s) / (a^2 - 2 b^2)
  const Rat det = a * a - 2 * b * b;
  if (det == 0) throw std::domain_error("Quad: division by zero");
  return Quad(a / det, -b / det);
}

Quad &Quad::operator/=(const Quad &o) { return *this *= o.inverse(); }

double Quad::to_double() const {
  return a.get_d() + b.get_d() * std::sqrt(2.0);
}

static std::string rat_str(const Rat &r) {
  // Always "p/q" so that output strings are canonical.
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string Quad::str() const {
  std::string out = rat_str(a);
  if (sgn(b) < 0) {
    out += "-" + rat_str(-b) + "*sqrt2";
  } else {
    out += "+" + rat_str(b) + "*sqrt2";
  }
  return out;
}

static Rat parse_rat(const std::string &text) {
  Rat r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("Quad: bad rational '" + text + "'");
  r.canonicalize();
  return r;
}

Quad Quad::parse(const std::string &text) {
  const std::string suffix = "*sqrt2";
  std::string s = text;
  // Strip whitespace.
  std::string clean;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) clean += c;
  s = clean;
  if (s.empty()) throw std::invalid_argument("Quad: empty string");

  auto pos = s.rfind(suffix);
  if (pos == std::string::npos || pos + suffix.size() != s.size()) {
    return Quad(parse_rat(s));  // plain rational
  }
  std::string head = s.substr(0, pos);
  // Split head into the rational part and the sqrt2 coefficient at the last
  // '+' or '-' that is not a leading sign or part of "+-".
  size_t split = std::string::npos;
  for (size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' &&
        head[i - 1] != '+' && head[i - 1] != '-') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    // Pure sqrt2 term such as "1/2*sqrt2" or "-1*sqrt2".
    return Quad(Rat(0), parse_rat(head));
  }
  Rat a = parse_rat(head.substr(0, split));
  std::string btxt = head.substr(split);
  if (!btxt.empty() && btxt[0] == '+') btxt = btxt.substr(1);
  return Quad(std::move(a), parse_rat(btxt));
}

Quad operator+(Quad lhs, const Quad &rhs) { return lhs += rhs; }
Quad operator-(Quad lhs, const Quad &rhs) { return lhs -= rhs; }
Quad operator*(Quad lhs, const Quad &rhs) { return lhs *= rhs; }
Quad operator/(Quad lhs, const Quad &rhs) { return lhs /= rhs; }

bool operator==(const Quad &lhs, const Quad &rhs) {
  return lhs.a == rhs.a && lhs.b == rhs.b;
}
bool operator!=(const Quad &lhs, const Quad &rhs) { return !(lhs == rhs); }
bool operator<(const Quad &lhs, const Quad &rhs) {
  return (lhs - rhs).sign() < 0;
}
bool operator<=(const Quad &lhs, const Quad &rhs) {
  return (lhs - rhs).sign() <= 0;
}
bool operator>(const Quad &lhs, const Quad &rhs) { return rhs < lhs; }
bool operator>=(const Quad &lhs, const Quad &rhs) { return rhs <= lhs; }

std::ostream &operator<<(std::ostream &os, const Quad &q) {
  return os << q.str();
}

//------------------------------------------------------------------------------
// Scalar
//------------------------------------------------------------------------------

const Quad &Scalar::quad() const {
  if (mode_ != Backend::exact)
    throw std::logic_error("Scalar: float value has no exact representation");
  return q_;
}

Scalar Scalar::to_backend(Backend target) const {
  if (target == mode_) return *this;
  if (target == Backend::floating) return Scalar::floating(to_double());
  throw std::logic_error("Scalar: cannot promote float to exact");
}

int Scalar::sign() const {
  if (mode_ == Backend::exact) return q_.sign();
  return (f_ > 0) - (f_ < 0);
}

bool Scalar::is_zero(double eps) const {
  if (mode_ == Backend::exact) return q_.is_zero();
  return std::abs(f_) <= eps;
}

bool Scalar::equals(const Scalar &o, double eps) const {
  if (mode_ == Backend::exact && o.mode_ == Backend::exact) return q_ == o.q_;
  return std::abs(to_double() - o.to_double()) <= eps;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (r.mode_ == Backend::exact)
    r.q_ = -r.q_;
  else
    r.f_ = -r.f_;
  return r;
}

#define NONLOC_SCALAR_COMPOUND(op)                        \
  Scalar &Scalar::operator op##=(const Scalar &o) {       \
    if (mode_ == Backend::exact && o.is_exact()) {        \
      q_ op## = o.q_;                                     \
    } else {                                              \
      f_ = to_double();                                   \
      f_ op## = o.to_double();                            \
      mode_ = Backend::floating;                          \
    }                                                     \
    return *this;                                         \
  }

NONLOC_SCALAR_COMPOUND(+)
NONLOC_SCALAR_COMPOUND(-)
NONLOC_SCALAR_COMPOUND(*)
#undef NONLOC_SCALAR_COMPOUND

Scalar &Scalar::operator/=(const Scalar &o) {
  if (mode_ == Backend::exact && o.is_exact()) {
    q_ /= o.q_;
  } else {
    f_ = to_double() / o.to_double();
    mode_ = Backend::floating;
  }
  return *this;
}

std::string Scalar::str() const {
  if (mode_ == Backend::exact) return q_.str();
  std::ostringstream os;
  os.precision(17);
  os << f_;
  return os.str();
}

Scalar operator+(Scalar lhs, const Scalar &rhs) { return lhs += rhs; }
Scalar operator-(Scalar lhs, const Scalar &rhs) { return lhs -= rhs; }
Scalar operator*(Scalar lhs, const Scalar &rhs) { return lhs *= rhs; }
Scalar operator/(Scalar lhs, const Scalar &rhs) { return lhs /= rhs; }

std::ostream &operator<<(std::ostream &os, const Scalar &s) {
  return os << s.str();
}

//------------------------------------------------------------------------------
// Complex
//------------------------------------------------------------------------------

double Complex::abs() const {
  return std::hypot(re.to_double(), im.to_double());
}

Complex &Complex::operator*=(const Complex &o) {
  Scalar r = re * o.re - im * o.im;
  Scalar i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex &Complex::operator/=(const Complex &o) {
  const Scalar n2 = o.norm2();
  Complex num = *this * o.conj();
  re = num.re / n2;
  im = num.im / n2;
  return *this;
}

Complex operator+(Complex lhs, const Complex &rhs) { return lhs += rhs; }
Complex operator-(Complex lhs, const Complex &rhs) { return lhs -= rhs; }
Complex operator*(Complex lhs, const Complex &rhs) { return lhs *= rhs; }
Complex operator/(Complex lhs, const Complex &rhs) { return lhs /= rhs; }

std::ostream &operator<<(std::ostream &os, const Complex &z) {
  return os << "(" << z.re << ", " << z.im << ")";
}

}  // namespace nonloc
