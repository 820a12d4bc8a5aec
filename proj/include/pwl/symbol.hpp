#pragma once
// Fixed symbol universe. Every polynomial in the library carries one exponent
// slot per symbol below; the enum order is the term order's symbol precedence
// and therefore part of the on-disk dump format. Do not reorder.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace pwl {

enum class Sym : int {
  x, y, z,          // main dependent variables
  X, Y,             // reduced 2D canonical pair
  f0, f1, f2,       // appendix dependent variables
  t, T,             // time and exponential time
  eta,
  b, bp,            // opaque b(t) and its derivative
  a,                // PV deformation parameter
  phi,              // PV overall factor
  c,                // integration constant (registered, unused in algebra)
  alpha0, alpha1, alpha2, alpha3, alpha4,
  beta0, beta1, beta2, beta3,
  A0, A1, A2, A3, A4,
  count_
};

inline constexpr int kSymCount = static_cast<int>(Sym::count_);

inline constexpr std::array<std::string_view, kSymCount> kSymNames = {
    "x", "y", "z", "X", "Y", "f0", "f1", "f2", "t", "T", "eta", "b", "bp",
    "a", "phi", "c", "alpha0", "alpha1", "alpha2", "alpha3", "alpha4",
    "beta0", "beta1", "beta2", "beta3", "A0", "A1", "A2", "A3", "A4"};

constexpr std::string_view sym_name(Sym s) {
  return kSymNames[static_cast<int>(s)];
}

inline std::optional<Sym> sym_from_name(std::string_view n) {
  for (int i = 0; i < kSymCount; ++i)
    if (kSymNames[i] == n) return static_cast<Sym>(i);
  return std::nullopt;
}

// dependent variables (things a vector field differentiates by)
constexpr bool sym_is_variable(Sym s) {
  switch (s) {
    case Sym::x: case Sym::y: case Sym::z:
    case Sym::X: case Sym::Y:
    case Sym::f0: case Sym::f1: case Sym::f2:
      return true;
    default:
      return false;
  }
}

}  // namespace pwl
