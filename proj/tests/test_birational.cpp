// Birational layer: exact map application, composition, words, volume.
#include <catch_amalgamated.hpp>

#include "pwl/birational_map.hpp"
#include "pwl/sampling.hpp"

using namespace pwl;

namespace {

// a generic D4(1) state: normalized parameters, nothing on a divisor
StateMap d4_state() {
  return {{Sym::x, {3, 7}},      {Sym::y, {5, 11}},     {Sym::z, {2, 9}},
          {Sym::eta, 2},         {Sym::alpha0, {1, 8}}, {Sym::alpha1, {1, 8}},
          {Sym::alpha2, {1, 4}}, {Sym::alpha3, {1, 8}}, {Sym::alpha4, {1, 8}}};
}

}  // namespace

TEST_CASE("reflections are exact involutions pointwise", "[birational]") {
  const auto gens = generators(WeylType::d4_1);
  const auto st = d4_state();
  for (const auto& g : gens) {
    auto once = apply_map(g, st);
    REQUIRE(once.has_value());
    auto twice = apply_map(g, *once);
    REQUIRE(twice.has_value());
    for (const auto& [s, v] : st) {
      INFO(g.name << " at " << sym_name(s));
      CHECK(twice->at(s) == v);
    }
  }
}

TEST_CASE("apply_map reports indeterminate states", "[birational]") {
  const auto gens = generators(WeylType::d4_1);
  auto st = d4_state();
  st[Sym::x] = 0;  // s1 shears z by alpha1/x
  CHECK(!apply_map(find_generator(gens, "s1"), st).has_value());
  CHECK(apply_map(find_generator(gens, "s3"), st).has_value());
}

TEST_CASE("parameter actions preserve the normalization", "[birational]") {
  for (auto t : kAllTypes) {
    const auto st0 = [&]() -> StateMap {
      StateMap st;
      const auto ps = param_syms(t);
      // a generic normalized parameter point
      const MultiPoly res = normalization_residual(t);
      for (size_t k = 0; k + 1 < ps.size(); ++k)
        st[ps[k]] = Rational(1, static_cast<long>(7 + 2 * k));
      const Rational tail = res.subst({{ps.back(), MultiPoly()}})
                                .evaluate(state_point(st));
      const Rational lead =
          res.coeff_of(ps.back(), 1).terms().begin()->second;
      st[ps.back()] = -tail / lead;
      for (auto v : dependent_vars(t))
        st[v] = Rational(2, 5) + Rational(static_cast<long>(v) % 3, 7);
      st[Sym::eta] = 2;
      st[Sym::a] = 1;
      st[Sym::phi] = -2;
      st[Sym::t] = 2;
      return st;
    }();
    REQUIRE(normalization_residual(t).evaluate(state_point(st0)) == 0);
    for (const auto& g : generators(t)) {
      auto img = apply_map(g, st0);
      if (!img) continue;  // a divisor was hit; fine for this check
      INFO(weyl_cli_name(t) << " " << g.name);
      CHECK(normalization_residual(t).evaluate(state_point(*img)) == 0);
    }
  }
}

TEST_CASE("compose and is_identity", "[birational]") {
  const auto gens = generators(WeylType::d4_1);
  const auto& s0 = find_generator(gens, "s0");
  const auto& s1 = find_generator(gens, "s1");
  CHECK(is_identity(compose(s0, s0)));
  CHECK(is_identity(compose(s1, s1)));
  CHECK(!is_identity(compose(s0, s1)));
  // (s0 s1)^2 = id since the D4(1) star ties s1 to s2 only
  CHECK(is_identity(compose_word(gens, {"s0", "s1", "s0", "s1"})));
  // (s1 s2)^3 = id, the braid relation
  CHECK(is_identity(
      compose_word(gens, {"s1", "s2", "s1", "s2", "s1", "s2"})));
  CHECK(!is_identity(compose_word(gens, {"s1", "s2", "s1", "s2"})));
  CHECK_THROWS_AS(compose_word(gens, {}), std::invalid_argument);
}

TEST_CASE("appendix conjugation relations", "[birational]") {
  // pi s_i pi^-1 shifts indices; spot check via words on a generic state
  const auto gens = generators(WeylType::c2_1_piii);
  StateMap st{{Sym::f0, {3, 4}}, {Sym::f1, {5, 7}}, {Sym::f2, {2, 3}},
              {Sym::eta, 2},     {Sym::alpha0, {1, 4}},
              {Sym::alpha1, {1, 4}}, {Sym::alpha2, {1, 4}}};
  // pi^2 = id pointwise
  auto twice = apply_word(gens, {"pi", "pi"}, st);
  REQUIRE(twice.has_value());
  for (const auto& [s, v] : st) CHECK(twice->at(s) == v);
  // pi s0 = s2 pi pointwise (pi conjugates 0 <-> 2)
  auto lhs = apply_word(gens, {"pi", "s0"}, st);
  auto rhs = apply_word(gens, {"s2", "pi"}, st);
  REQUIRE(lhs.has_value());
  REQUIRE(rhs.has_value());
  for (const auto& [s, v] : *lhs) CHECK(rhs->at(s) == v);
}

TEST_CASE("apply_word reports a vanishing denominator mid word", "[birational]") {
  const auto gens = generators(WeylType::d4_1);
  auto st = d4_state();
  st[Sym::x] = 0;
  CHECK(!apply_word(gens, {"s3", "s1"}, st).has_value());
  CHECK(apply_word(gens, {"s3", "s3"}, st).has_value());
}

TEST_CASE("reflections and charts preserve the volume form", "[birational]") {
  for (auto t : kAllTypes) {
    for (const auto& g : generators(t)) {
      if (g.name == "pi") continue;  // cyclic relabelings are not unimodular
      INFO(weyl_cli_name(t) << " " << g.name);
      CHECK(volume_check(g));
    }
    const auto cs = charts(t);
    if (!cs) continue;
    for (const auto& c : *cs) {
      INFO(weyl_cli_name(t) << " chart " << c.index);
      CHECK(volume_check(c, t));
    }
  }
}

TEST_CASE("chart inverses are exact", "[birational]") {
  for (auto t : {WeylType::d4_1, WeylType::b3_1, WeylType::d3_2}) {
    const auto cs = charts(t);
    const auto vars = dependent_vars(t);
    for (const auto& c : *cs) {
      std::map<Sym, RationalFunc> fwd, inv;
      for (size_t i = 0; i < vars.size(); ++i) {
        fwd[vars[i]] = c.images[i];
        inv[vars[i]] = c.inverse_images[i];
      }
      for (size_t i = 0; i < vars.size(); ++i) {
        INFO(weyl_cli_name(t) << " chart " << c.index << " var " << i);
        // inverse after forward is the identity on each coordinate
        CHECK(rf_equal(subst_vars(c.images[i], inv),
                       RationalFunc::var(vars[i])));
        CHECK(rf_equal(subst_vars(c.inverse_images[i], fwd),
                       RationalFunc::var(vars[i])));
      }
    }
  }
}

TEST_CASE("sampled braid relations beyond the involution", "[birational]") {
  // exercised exhaustively by the verify layer; spot check the long ones here
  Sampler smp(212, "test.birational.braid");
  auto sample_state = [&](WeylType t) {
    StateMap st;
    for (auto v : dependent_vars(t))
      st[v] = Rational(smp.nonzero_int(), 997);
    for (auto p : action_syms(t)) st[p] = Rational(smp.nonzero_int(), 991);
    st[Sym::eta] = Rational(smp.nonzero_int(), 983);
    st[Sym::a] = 1;
    return st;
  };
  // G2(1): (s1 s2)^6 = id
  {
    const auto gens = generators(WeylType::g2_1);
    std::vector<std::string> w;
    for (int k = 0; k < 6; ++k) {
      w.push_back("s1");
      w.push_back("s2");
    }
    for (int trial = 0; trial < 5; ++trial) {
      const auto st = sample_state(WeylType::g2_1);
      auto img = apply_word(gens, w, st);
      if (!img) continue;
      for (const auto& [s, v] : st) CHECK(img->at(s) == v);
    }
  }
  // D3(2): (s0 s1)^4 = id
  {
    const auto gens = generators(WeylType::d3_2);
    std::vector<std::string> w;
    for (int k = 0; k < 4; ++k) {
      w.push_back("s0");
      w.push_back("s1");
    }
    for (int trial = 0; trial < 5; ++trial) {
      const auto st = sample_state(WeylType::d3_2);
      auto img = apply_word(gens, w, st);
      if (!img) continue;
      for (const auto& [s, v] : st) CHECK(img->at(s) == v);
    }
  }
}

TEST_CASE("free product: no relation closes the A2(2) pair", "[birational]") {
  const auto gens = generators(WeylType::a2_2);
  StateMap st{{Sym::x, {3, 7}},  {Sym::y, {5, 11}}, {Sym::z, {2, 9}},
              {Sym::eta, 2},     {Sym::beta0, {1, 4}},
              {Sym::beta1, {1, 8}}};
  std::vector<std::string> w;
  for (int k = 1; k <= 12; ++k) {
    w.push_back("s0");
    w.push_back("s1");
    auto img = apply_word(gens, w, st);
    if (!img) continue;  // indeterminate never counts as closing
    bool same = true;
    for (const auto& [s, v] : st) same = same && img->at(s) == v;
    INFO("(s0 s1)^" << k);
    CHECK(!same);
  }
}
