#pragma once
// Calculus of BirationalMap and ChartMap: pointwise application, symbolic
// composition, pullback of vector fields along the flow, Jacobian volume
// checks.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwl/rational_func.hpp"
#include "pwl/systems.hpp"

namespace pwl {

// exact rational state: dependent variables, parameters and any fixed
// constants (eta, a, phi, t) the formulas mention
using StateMap = std::map<Sym, Rational>;

inline std::array<Rational, kSymCount> state_point(const StateMap& st) {
  std::array<Rational, kSymCount> pt{};
  for (const auto& [s, v] : st) pt[static_cast<int>(s)] = v;
  return pt;
}

// Pointwise application. nullopt means Indeterminate: a denominator of some
// image vanishes at the state.
inline std::optional<StateMap> apply_map(const BirationalMap& m,
                                         const StateMap& st) {
  const auto pt = state_point(st);
  StateMap out = st;
  const auto vars = dependent_vars(m.type);
  for (size_t i = 0; i < vars.size(); ++i) {
    auto v = m.var_images.at(i).evaluate(pt);
    if (!v) return std::nullopt;
    out[vars[i]] = *v;
  }
  const auto as = action_syms(m.type);
  for (size_t k = 0; k < as.size(); ++k)
    out[as[k]] = m.param_action.at(k).evaluate(pt);
  return out;
}

// Symbolic composition, apply `first` then `second`. Unreduced substitution;
// the term cap turns runaway growth into BlowupError.
inline BirationalMap compose(const BirationalMap& first,
                             const BirationalMap& second) {
  if (first.type != second.type)
    throw std::invalid_argument("compose: type mismatch");
  std::map<Sym, RationalFunc> sub;
  const auto vars = dependent_vars(first.type);
  for (size_t i = 0; i < vars.size(); ++i) sub[vars[i]] = first.var_images[i];
  const auto as = action_syms(first.type);
  std::vector<std::pair<Sym, MultiPoly>> psub;
  for (size_t k = 0; k < as.size(); ++k) {
    sub[as[k]] = RationalFunc(first.param_action[k]);
    psub.emplace_back(as[k], first.param_action[k]);
  }
  BirationalMap out;
  out.name = first.name + " " + second.name;
  out.type = first.type;
  for (const auto& u : second.var_images)
    out.var_images.push_back(subst_vars(u, sub));
  for (const auto& p : second.param_action)
    out.param_action.push_back(p.subst(psub));
  return out;
}

// left-to-right word over named generators: "s0 s1 s0" applies s0 first
inline BirationalMap compose_word(const std::vector<BirationalMap>& gens,
                                  const std::vector<std::string>& word) {
  if (word.empty()) throw std::invalid_argument("compose_word: empty word");
  BirationalMap acc = find_generator(gens, word.front());
  for (size_t i = 1; i < word.size(); ++i)
    acc = compose(acc, find_generator(gens, word[i]));
  return acc;
}

inline std::optional<StateMap> apply_word(
    const std::vector<BirationalMap>& gens,
    const std::vector<std::string>& word, StateMap st) {
  for (const auto& w : word) {
    auto next = apply_map(find_generator(gens, w), st);
    if (!next) return std::nullopt;
    st = *next;
  }
  return st;
}

inline bool is_identity(const BirationalMap& m) {
  const auto vars = dependent_vars(m.type);
  for (size_t i = 0; i < vars.size(); ++i)
    if (!rf_equal(m.var_images[i], RationalFunc::var(vars[i]))) return false;
  const auto as = action_syms(m.type);
  for (size_t k = 0; k < as.size(); ++k)
    if (m.param_action[k] != P(as[k])) return false;
  return true;
}

// Sum_v du/dv * signed_part[v]: the signed time derivative of each image
// along the flow, leaving the scalar prefactor off so chart results stay
// polynomial-testable.
inline std::vector<RationalFunc> pullback_signed(
    const std::vector<RationalFunc>& images, const SystemDef& sys) {
  std::vector<RationalFunc> out;
  for (const auto& u : images) {
    RationalFunc acc;
    for (size_t v = 0; v < sys.vars.size(); ++v)
      acc = acc + u.derivative(sys.vars[v]) * RationalFunc(sys.signed_part[v]);
    out.push_back(acc);
  }
  return out;
}

inline std::vector<RationalFunc> pullback_field(
    const std::vector<RationalFunc>& images, const SystemDef& sys) {
  auto out = pullback_signed(images, sys);
  for (auto& u : out) u = sys.prefactor * u;
  return out;
}

// signed derivative of the chart images re-expressed in chart coordinates
// (inverse_images are written in the same symbols, so one substitution does)
inline std::vector<RationalFunc> chart_signed_field(const ChartMap& ch,
                                                    const SystemDef& sys) {
  auto forward = pullback_signed(
      {ch.images[0], ch.images[1], ch.images[2]}, sys);
  std::map<Sym, RationalFunc> inv;
  for (size_t i = 0; i < sys.vars.size(); ++i)
    inv[sys.vars[i]] = ch.inverse_images[i];
  for (auto& u : forward) u = subst_vars(u, inv);
  return forward;
}

inline RationalFunc map_jacobian(const std::vector<RationalFunc>& images,
                                 const std::vector<Sym>& vars) {
  const size_t n = vars.size();
  if (images.size() != n || (n != 2 && n != 3))
    throw std::invalid_argument("map_jacobian: need a 2x2 or 3x3 square map");
  auto d = [&](size_t i, size_t j) { return images[i].derivative(vars[j]); };
  if (n == 2) return d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0);
  return d(0, 0) * (d(1, 1) * d(2, 2) - d(1, 2) * d(2, 1))
       - d(0, 1) * (d(1, 0) * d(2, 2) - d(1, 2) * d(2, 0))
       + d(0, 2) * (d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0));
}

inline bool volume_check(const std::vector<RationalFunc>& images,
                         const std::vector<Sym>& vars) {
  return rf_equal(map_jacobian(images, vars), RationalFunc(C(1)));
}

inline bool volume_check(const BirationalMap& m) {
  return volume_check(m.var_images, dependent_vars(m.type));
}

inline bool volume_check(const ChartMap& ch, WeylType type) {
  return volume_check({ch.images[0], ch.images[1], ch.images[2]},
                      dependent_vars(type));
}

}  // namespace pwl
