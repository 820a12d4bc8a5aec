#pragma once
// Weyl type metadata: generator counts and Coxeter order matrices.
// Order matrices follow the affine Dynkin data for each type; only C2(1)
// has its relations spelled out explicitly in the source material (and the
// checks are the evidence the others are right). m=0 encodes infinity.

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pwl/symbol.hpp"

namespace pwl {

enum class WeylType {
  d4_1,          // 5 generators s0..s4
  b3_1,          // 4
  d3_2,          // 3
  g2_1,          // 3
  a2_2,          // 2
  a3_1_pv,       // 4 reflections + pi
  c2_1_piii,     // 3 reflections + pi
  d4_1_reduced,  // reduced 2D action, 5 generators
};

inline constexpr std::array<WeylType, 8> kAllTypes = {
    WeylType::d4_1,    WeylType::b3_1,      WeylType::d3_2,
    WeylType::g2_1,    WeylType::a2_2,      WeylType::a3_1_pv,
    WeylType::c2_1_piii, WeylType::d4_1_reduced};

constexpr std::string_view weyl_name(WeylType t) {
  switch (t) {
    case WeylType::d4_1: return "D4(1)";
    case WeylType::b3_1: return "B3(1)";
    case WeylType::d3_2: return "D3(2)";
    case WeylType::g2_1: return "G2(1)";
    case WeylType::a2_2: return "A2(2)";
    case WeylType::a3_1_pv: return "A3(1)-PV";
    case WeylType::c2_1_piii: return "C2(1)-PIII";
    case WeylType::d4_1_reduced: return "D4(1)-reduced-2D";
  }
  return "?";
}

// CLI spelling
constexpr std::string_view weyl_cli_name(WeylType t) {
  switch (t) {
    case WeylType::d4_1: return "d4";
    case WeylType::b3_1: return "b3";
    case WeylType::d3_2: return "d3";
    case WeylType::g2_1: return "g2";
    case WeylType::a2_2: return "a2";
    case WeylType::a3_1_pv: return "a3-pv";
    case WeylType::c2_1_piii: return "c2-piii";
    case WeylType::d4_1_reduced: return "d4-reduced";
  }
  return "?";
}

inline std::optional<WeylType> weyl_from_cli(std::string_view s) {
  for (WeylType t : kAllTypes)
    if (weyl_cli_name(t) == s) return t;
  if (s == "pv") return WeylType::a3_1_pv;
  if (s == "piii") return WeylType::c2_1_piii;
  return std::nullopt;
}

// reflection generators, not counting pi
constexpr int reflection_count(WeylType t) {
  switch (t) {
    case WeylType::d4_1: return 5;
    case WeylType::b3_1: return 4;
    case WeylType::d3_2: return 3;
    case WeylType::g2_1: return 3;
    case WeylType::a2_2: return 2;
    case WeylType::a3_1_pv: return 4;
    case WeylType::c2_1_piii: return 3;
    case WeylType::d4_1_reduced: return 5;
  }
  return 0;
}

constexpr bool has_pi(WeylType t) {
  return t == WeylType::a3_1_pv || t == WeylType::c2_1_piii;
}

// total generator count including pi where present
constexpr int generator_count(WeylType t) {
  return reflection_count(t) + (has_pi(t) ? 1 : 0);
}

// m_ij for the reflection pairs; m_ii = 1 by convention; 0 means infinite
inline int coxeter_order(WeylType t, int i, int j) {
  if (i == j) return 1;
  if (i > j) std::swap(i, j);
  auto star_d4 = [&](int i_, int j_) { return (j_ == 2 || i_ == 2) ? 3 : 2; };
  switch (t) {
    case WeylType::d4_1:
    case WeylType::d4_1_reduced:
      return star_d4(i, j);
    case WeylType::b3_1:
      // fork 0,1 -> 2, double bond 2=3
      if ((i == 0 || i == 1) && j == 2) return 3;
      if (i == 2 && j == 3) return 4;
      return 2;
    case WeylType::d3_2:
      // path 0=1=2, both bonds double
      if (j - i == 1) return 4;
      return 2;
    case WeylType::g2_1:
      // path 0-1#2 with triple bond 1,2
      if (i == 0 && j == 1) return 3;
      if (i == 1 && j == 2) return 6;
      return 2;
    case WeylType::a2_2:
      return 0;  // quadruple bond: infinite order
    case WeylType::a3_1_pv:
      // 4-cycle 0-1-2-3-0
      if (j - i == 1 || (i == 0 && j == 3)) return 3;
      return 2;
    case WeylType::c2_1_piii:
      // 0=1=2 per the stated relations
      if (j - i == 1) return 4;
      return 2;
  }
  return 2;
}

// pi conjugation permutation on reflection indices (pi s_i pi = s_perm[i])
inline std::vector<int> pi_conjugation(WeylType t) {
  switch (t) {
    case WeylType::a3_1_pv: return {2, 1, 0, 3};
    case WeylType::c2_1_piii: return {2, 1, 0};
    default: return {};
  }
}

// symbols of the dependent variables for the type (size 2 for the reduced
// system, 3 otherwise)
inline std::vector<Sym> dependent_vars(WeylType t) {
  switch (t) {
    case WeylType::a3_1_pv:
    case WeylType::c2_1_piii:
      return {Sym::f0, Sym::f1, Sym::f2};
    case WeylType::d4_1_reduced:
      return {Sym::X, Sym::Y};
    default:
      return {Sym::x, Sym::y, Sym::z};
  }
}

// parameter symbols, in index order
inline std::vector<Sym> param_syms(WeylType t) {
  switch (t) {
    case WeylType::d4_1:
    case WeylType::d4_1_reduced:
      return {Sym::alpha0, Sym::alpha1, Sym::alpha2, Sym::alpha3, Sym::alpha4};
    case WeylType::b3_1:
      return {Sym::beta0, Sym::beta1, Sym::beta2, Sym::beta3};
    case WeylType::d3_2:
    case WeylType::g2_1:
      return {Sym::beta0, Sym::beta1, Sym::beta2};
    case WeylType::a2_2:
      return {Sym::beta0, Sym::beta1};
    case WeylType::a3_1_pv:
      return {Sym::alpha0, Sym::alpha1, Sym::alpha2, Sym::alpha3};
    case WeylType::c2_1_piii:
      return {Sym::alpha0, Sym::alpha1, Sym::alpha2};
  }
  return {};
}

}  // namespace pwl
