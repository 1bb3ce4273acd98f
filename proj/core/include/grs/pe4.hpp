#pragma once

// Vectors of the neutral space R^4_2 with metric dx1^2 + dx2^2 - dx3^2 - dx4^2.

#include <array>
#include <cstddef>
#include <string_view>

namespace grs {

struct Vec4 {
  std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

  constexpr Vec4() = default;
  constexpr Vec4(double x1, double x2, double x3, double x4) : x{x1, x2, x3, x4} {}

  constexpr double& operator[](std::size_t i) { return x[i]; }
  constexpr double operator[](std::size_t i) const { return x[i]; }

  constexpr Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) x[i] += o.x[i];
    return *this;
  }
  constexpr Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) x[i] -= o.x[i];
    return *this;
  }
  constexpr Vec4& operator*=(double s) {
    for (auto& c : x) c *= s;
    return *this;
  }

  friend constexpr Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend constexpr Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend constexpr Vec4 operator-(Vec4 a) { return a *= -1.0; }
  friend constexpr Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend constexpr Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend constexpr Vec4 operator/(Vec4 a, double s) { return a *= (1.0 / s); }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;
};

/// Signature (+,+,-,-) inner product.
constexpr double inner(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// Plain Euclidean squared norm; used for scaling tolerances, never for geometry.
constexpr double euclid_norm2(const Vec4& a) {
  return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3];
}

double euclid_norm(const Vec4& a);

/// Largest absolute component.
double max_abs(const Vec4& a);

enum class CausalCharacter { Spacelike, Timelike, Lightlike, Zero };

inline constexpr double kCausalEps = 1e-12;

/// Lightlike when |<v,v>| <= eps * max(1, |v|^2_euclid); the zero vector is Zero.
CausalCharacter causal_character(const Vec4& v, double eps = kCausalEps);

std::string_view to_string(CausalCharacter c);

}  // namespace grs
