#include "grs/jet.hpp"

#include <cmath>
#include <string>

#include "grs/errors.hpp"

namespace grs {

namespace {

constexpr double kTinyDivisor = 1e-300;

void require_divisor(double v) {
  if (!(std::abs(v) >= kTinyDivisor)) {
    throw DomainError("jet division by |value| < 1e-300");
  }
}

bool is_integer(double p) { return std::isfinite(p) && std::floor(p) == p; }

}  // namespace

Jet2& Jet2::operator/=(const Jet2& o) {
  require_divisor(o.val);
  const double q = val / o.val;
  const double q1 = (d1 - q * o.d1) / o.val;
  const double q2 = (d2 - 2.0 * q1 * o.d1 - q * o.d2) / o.val;
  val = q;
  d1 = q1;
  d2 = q2;
  return *this;
}

Jet2 operator/(const Jet2& a, double s) {
  require_divisor(s);
  return a * (1.0 / s);
}

Jet2 operator/(double c, const Jet2& b) { return Jet2::constant(c) / b; }

Jet2 sin(const Jet2& j) {
  const double s = std::sin(j.val), c = std::cos(j.val);
  return chain(j, s, c, -s);
}

Jet2 cos(const Jet2& j) {
  const double s = std::sin(j.val), c = std::cos(j.val);
  return chain(j, c, -s, -c);
}

Jet2 tan(const Jet2& j) {
  const double c = std::cos(j.val);
  require_divisor(c);
  const double t = std::tan(j.val);
  const double sec2 = 1.0 + t * t;
  return chain(j, t, sec2, 2.0 * t * sec2);
}

Jet2 sinh(const Jet2& j) {
  const double s = std::sinh(j.val), c = std::cosh(j.val);
  return chain(j, s, c, s);
}

Jet2 cosh(const Jet2& j) {
  const double s = std::sinh(j.val), c = std::cosh(j.val);
  return chain(j, c, s, c);
}

Jet2 tanh(const Jet2& j) {
  const double t = std::tanh(j.val);
  const double sech2 = 1.0 - t * t;
  return chain(j, t, sech2, -2.0 * t * sech2);
}

Jet2 exp(const Jet2& j) {
  const double e = std::exp(j.val);
  return chain(j, e, e, e);
}

Jet2 log(const Jet2& j) {
  if (!(j.val > 0.0)) throw DomainError("log of non-positive value");
  const double r = 1.0 / j.val;
  return chain(j, std::log(j.val), r, -r * r);
}

Jet2 sqrt(const Jet2& j) {
  if (!(j.val > 0.0)) throw DomainError("sqrt requires a positive argument");
  const double s = std::sqrt(j.val);
  const double f1 = 0.5 / s;
  return chain(j, s, f1, -0.5 * f1 / j.val);
}

Jet2 asin(const Jet2& j) {
  if (!(std::abs(j.val) < 1.0)) throw DomainError("asin requires |x| < 1");
  const double w = 1.0 - j.val * j.val;
  const double f1 = 1.0 / std::sqrt(w);
  return chain(j, std::asin(j.val), f1, j.val * f1 / w);
}

Jet2 atan(const Jet2& j) {
  const double w = 1.0 / (1.0 + j.val * j.val);
  return chain(j, std::atan(j.val), w, -2.0 * j.val * w * w);
}

Jet2 atan2(const Jet2& y, const Jet2& x) {
  const double r2 = x.val * x.val + y.val * y.val;
  require_divisor(r2);
  // theta' = (x y' - y x') / r^2 ; differentiate once more by the quotient rule.
  const double num1 = x.val * y.d1 - y.val * x.d1;
  const double num2 = x.val * y.d2 - y.val * x.d2;
  const double r2d = 2.0 * (x.val * x.d1 + y.val * y.d1);
  const double t1 = num1 / r2;
  const double t2 = (num2 - t1 * r2d) / r2;
  return {std::atan2(y.val, x.val), t1, t2};
}

Jet2 pow(const Jet2& j, double p) {
  if (p == 0.0) return Jet2::constant(1.0);
  if (j.val == 0.0) {
    if (p == 1.0) return j;
    if (p == 2.0) return j * j;
    throw DomainError("pow of zero with exponent other than 0, 1, 2");
  }
  if (j.val < 0.0 && !is_integer(p)) {
    throw DomainError("pow of negative value with non-integer exponent");
  }
  const double v = std::pow(j.val, p);
  const double f1 = p * v / j.val;
  const double f2 = (p - 1.0) * f1 / j.val;
  return chain(j, v, f1, f2);
}

Jet2 pow(const Jet2& base, const Jet2& expo) {
  if (expo.d1 == 0.0 && expo.d2 == 0.0) return pow(base, expo.val);
  return exp(expo * log(base));
}

Jet2 jet_apply(ElemFn fn, const Jet2& j) {
  switch (fn) {
    case ElemFn::Sin: return sin(j);
    case ElemFn::Cos: return cos(j);
    case ElemFn::Tan: return tan(j);
    case ElemFn::Sinh: return sinh(j);
    case ElemFn::Cosh: return cosh(j);
    case ElemFn::Tanh: return tanh(j);
    case ElemFn::Exp: return exp(j);
    case ElemFn::Log: return log(j);
    case ElemFn::Sqrt: return sqrt(j);
    case ElemFn::Asin: return asin(j);
    case ElemFn::Atan: return atan(j);
  }
  throw DomainError("unknown elementary function");
}

ElemFn elem_fn_from_name(std::string_view name) {
  struct Entry {
    std::string_view name;
    ElemFn fn;
  };
  static constexpr Entry kTable[] = {
      {"sin", ElemFn::Sin},   {"cos", ElemFn::Cos},     {"tan", ElemFn::Tan},
      {"sinh", ElemFn::Sinh}, {"cosh", ElemFn::Cosh},   {"tanh", ElemFn::Tanh},
      {"exp", ElemFn::Exp},   {"log", ElemFn::Log},     {"ln", ElemFn::Log},
      {"sqrt", ElemFn::Sqrt}, {"asin", ElemFn::Asin},   {"arcsin", ElemFn::Asin},
      {"atan", ElemFn::Atan}, {"arctan", ElemFn::Atan},
  };
  for (const auto& e : kTable) {
    if (e.name == name) return e.fn;
  }
  throw DomainError("unknown function '" + std::string(name) + "'");
}

}  // namespace grs
