#include "grs/pe4.hpp"

#include <algorithm>
#include <cmath>

namespace grs {

double euclid_norm(const Vec4& a) { return std::sqrt(euclid_norm2(a)); }

double max_abs(const Vec4& a) {
  double m = 0.0;
  for (double c : a.x) m = std::max(m, std::abs(c));
  return m;
}

CausalCharacter causal_character(const Vec4& v, double eps) {
  const double n2 = euclid_norm2(v);
  if (n2 == 0.0) return CausalCharacter::Zero;
  const double q = inner(v, v);
  if (std::abs(q) <= eps * std::max(1.0, n2)) return CausalCharacter::Lightlike;
  return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

std::string_view to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Lightlike: return "lightlike";
    case CausalCharacter::Zero: return "zero";
  }
  return "?";
}

}  // namespace grs
