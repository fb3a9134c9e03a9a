#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stabloc {

/// Single-qubit Clifford node attribute. The eight values are the operators
/// H^h R^r Z^z (R = sqrt(Z)), encoded as value = h<<2 | r<<1 | z. In the
/// graphical calculus they carry three binary attributes:
///   fill  red/white   <-> h = 0/1
///   shape circle/diamond <-> r = 0/1
///   sign  +/-         <-> z = 0/1
enum class CliffordTag : std::uint8_t {
  I = 0,
  Z = 1,
  R = 2,
  RZ = 3,
  H = 4,
  HZ = 5,
  HR = 6,
  HRZ = 7,
};

namespace tag {

inline bool has_h(CliffordTag t) { return std::uint8_t(t) & 4; }
inline bool has_r(CliffordTag t) { return std::uint8_t(t) & 2; }
inline bool has_z(CliffordTag t) { return std::uint8_t(t) & 1; }

inline bool fill_white(CliffordTag t) { return has_h(t); }
inline bool shape_diamond(CliffordTag t) { return has_r(t); }
inline bool sign_minus(CliffordTag t) { return has_z(t); }

inline CliffordTag make(bool h, bool r, bool z) {
  return CliffordTag(std::uint8_t(h) << 2 | std::uint8_t(r) << 1 | std::uint8_t(z));
}

inline CliffordTag flip_fill(CliffordTag t) { return CliffordTag(std::uint8_t(t) ^ 4); }
inline CliffordTag flip_shape(CliffordTag t) { return CliffordTag(std::uint8_t(t) ^ 2); }
inline CliffordTag flip_sign(CliffordTag t) { return CliffordTag(std::uint8_t(t) ^ 1); }

/// Reshape: on a circle flips the shape only; on a diamond flips shape and
/// sign. Algebraically the right-multiplication of the tag by R.
inline CliffordTag reshape(CliffordTag t) {
  return shape_diamond(t) ? CliffordTag(std::uint8_t(t) ^ 3) : flip_shape(t);
}

inline std::string_view name(CliffordTag t) {
  constexpr std::array<std::string_view, 8> names{"I", "Z", "R", "RZ", "H", "HZ", "HR", "HRZ"};
  return names[std::uint8_t(t)];
}

inline CliffordTag parse(std::string_view s) {
  for (std::uint8_t v = 0; v < 8; ++v)
    if (name(CliffordTag(v)) == s) return CliffordTag(v);
  throw std::invalid_argument("unknown clifford tag '" + std::string(s) + "'");
}

/// Pauli-axis image under conjugation by the tag: returns s' with
/// sigma^{s'} = T^dag sigma^s T, phases dropped. Axes use the usual
/// numbering 0..3 = I,X,Y,Z.
inline int conjugate_axis(CliffordTag t, int axis) {
  if (axis < 0 || axis > 3) throw std::invalid_argument("pauli axis out of range");
  if (axis == 0) return 0;
  // T = H^h R^r Z^z conjugates via H first, then R (Z acts trivially on labels).
  if (has_h(t)) {
    if (axis == 1)
      axis = 3;
    else if (axis == 3)
      axis = 1;
  }
  if (has_r(t)) {
    if (axis == 1)
      axis = 2;
    else if (axis == 2)
      axis = 1;
  }
  return axis;
}

}  // namespace tag
}  // namespace stabloc
