#pragma once

// Order-2 Taylor jets in one variable: (value, d/du, d^2/du^2).
//
// Arithmetic follows the Leibniz and chain rules truncated at second order, so
// any closed-form meridian written against Jet2 yields exact f, f', f''.

#include <string_view>

namespace grs {

struct Jet2 {
  double val = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  constexpr Jet2() = default;
  constexpr Jet2(double v, double a, double b) : val(v), d1(a), d2(b) {}

  static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
  static constexpr Jet2 variable(double u) { return {u, 1.0, 0.0}; }

  constexpr Jet2& operator+=(const Jet2& o) {
    val += o.val;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  constexpr Jet2& operator-=(const Jet2& o) {
    val -= o.val;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  constexpr Jet2& operator*=(double s) {
    val *= s;
    d1 *= s;
    d2 *= s;
    return *this;
  }
  constexpr Jet2& operator*=(const Jet2& o) {
    const double v = val * o.val;
    const double a = d1 * o.val + val * o.d1;
    const double b = d2 * o.val + 2.0 * d1 * o.d1 + val * o.d2;
    val = v;
    d1 = a;
    d2 = b;
    return *this;
  }
  Jet2& operator/=(const Jet2& o);

  friend constexpr bool operator==(const Jet2&, const Jet2&) = default;
};

constexpr Jet2 operator-(Jet2 a) { return a *= -1.0; }
constexpr Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
constexpr Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
constexpr Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
constexpr Jet2 operator+(Jet2 a, double c) { a.val += c; return a; }
constexpr Jet2 operator+(double c, Jet2 a) { a.val += c; return a; }
constexpr Jet2 operator-(Jet2 a, double c) { a.val -= c; return a; }
constexpr Jet2 operator-(double c, const Jet2& a) { return Jet2::constant(c) - a; }
constexpr Jet2 operator*(Jet2 a, double s) { return a *= s; }
constexpr Jet2 operator*(double s, Jet2 a) { return a *= s; }
inline Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
Jet2 operator/(const Jet2& a, double s);
Jet2 operator/(double c, const Jet2& b);

/// Composition with a scalar function given its value and first two derivatives
/// at j.val: d1 = f'·j', d2 = f''·j'^2 + f'·j''.
constexpr Jet2 chain(const Jet2& j, double f0, double f1, double f2) {
  return {f0, f1 * j.d1, f2 * j.d1 * j.d1 + f1 * j.d2};
}

Jet2 sin(const Jet2& j);
Jet2 cos(const Jet2& j);
Jet2 tan(const Jet2& j);
Jet2 sinh(const Jet2& j);
Jet2 cosh(const Jet2& j);
Jet2 tanh(const Jet2& j);
Jet2 exp(const Jet2& j);
Jet2 log(const Jet2& j);
Jet2 sqrt(const Jet2& j);
Jet2 asin(const Jet2& j);
Jet2 atan(const Jet2& j);
/// Angle of the point (x, y), continuous derivative wherever x^2 + y^2 > 0.
Jet2 atan2(const Jet2& y, const Jet2& x);
/// j^p for real p; requires j.val > 0 unless p is an integer.
Jet2 pow(const Jet2& j, double p);
Jet2 pow(const Jet2& base, const Jet2& expo);

enum class ElemFn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Asin, Atan };

Jet2 jet_apply(ElemFn fn, const Jet2& j);

/// Parses "sin", "sqrt", ... ; throws DomainError on unknown names.
ElemFn elem_fn_from_name(std::string_view name);

}  // namespace grs
