#pragma once
// Sparse multivariate polynomials over exact rationals, graded-lex ordered.
// Invariants: no zero coefficients stored; exponent vectors all have width
// kSymCount; iteration order is graded-lex descending (leading term first).

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwl/rational.hpp"
#include "pwl/symbol.hpp"

namespace pwl {

using Mono = std::array<std::uint16_t, kSymCount>;

inline int mono_grade(const Mono& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

// graded-lex, descending: higher grade first, then lexicographically larger
// exponent vector first (symbol enum order is the precedence)
struct GradedLexGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    int ga = mono_grade(a), gb = mono_grade(b);
    if (ga != gb) return ga > gb;
    return a > b;
  }
};

// any symbolic computation exceeding the term cap throws; checks catch this
// and report status "blowup" (then optionally fall back to sampled mode)
struct BlowupError : std::runtime_error {
  BlowupError() : std::runtime_error("term cap exceeded") {}
};

inline std::atomic<std::size_t>& term_cap() {
  static std::atomic<std::size_t> cap{2'000'000};
  return cap;
}

class MultiPoly {
 public:
  using TermMap = std::map<Mono, Rational, GradedLexGreater>;

  MultiPoly() = default;

  static MultiPoly constant(Rational r) {
    MultiPoly p;
    if (r != 0) p.terms_.emplace(Mono{}, std::move(r));
    return p;
  }
  static MultiPoly var(Sym s, int exp = 1) {
    MultiPoly p;
    Mono m{};
    m[static_cast<int>(s)] = static_cast<std::uint16_t>(exp);
    p.terms_.emplace(m, Rational(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  void add_term(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    if (terms_.size() > term_cap()) throw BlowupError{};
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m;
        for (int i = 0; i < kSymCount; ++i)
          m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
        r.add_term(m, ca * cb);
      }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly& scale(const Rational& r) {
    if (r == 0) { terms_.clear(); return *this; }
    for (auto& [m, c] : terms_) c *= r;
    return *this;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& r) { return a.scale(r); }
  friend MultiPoly operator*(const Rational& r, MultiPoly a) { return a.scale(r); }

  MultiPoly pow(int e) const {
    if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
    MultiPoly r = constant(1);
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base = (e >>= 1) ? base * base : base;
    }
    return r;
  }

  MultiPoly derivative(Sym s) const {
    const int i = static_cast<int>(s);
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      Mono d = m;
      d[i] -= 1;
      r.add_term(d, c * m[i]);
    }
    return r;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_grade(m));
    return d;  // -1 for the zero polynomial
  }
  // degree counting only the listed symbols
  int degree_in(std::initializer_list<Sym> syms) const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int g = 0;
      for (Sym s : syms) g += m[static_cast<int>(s)];
      d = std::max(d, g);
    }
    return d;
  }
  int degree_in(Sym s) const { return degree_in({s}); }

  // sum of terms whose exponent in s equals d, with that exponent cleared
  MultiPoly coeff_of(Sym s, int d) const {
    const int i = static_cast<int>(s);
    MultiPoly r;
    for (const auto& [m, c] : terms_)
      if (m[i] == d) {
        Mono e = m;
        e[i] = 0;
        r.add_term(e, c);
      }
    return r;
  }

  Rational evaluate(const std::array<Rational, kSymCount>& pt) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (int i = 0; i < kSymCount; ++i)
        for (int k = 0; k < m[i]; ++k) v *= pt[i];
      acc += v;
    }
    return acc;
  }
  double evaluate_d(const std::array<double, kSymCount>& pt) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
      double v = to_double(c);
      for (int i = 0; i < kSymCount; ++i)
        for (int k = 0; k < m[i]; ++k) v *= pt[i];
      acc += v;
    }
    return acc;
  }

  // substitute each listed symbol by a polynomial (used for the affine
  // normalization elimination and the parameter identifications)
  MultiPoly subst(const std::vector<std::pair<Sym, MultiPoly>>& map) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
      Mono keep = m;
      MultiPoly factor = constant(c);
      for (const auto& [s, img] : map) {
        const int i = static_cast<int>(s);
        if (keep[i] == 0) continue;
        factor *= img.pow(keep[i]);
        keep[i] = 0;
      }
      MultiPoly rest;
      rest.terms_.emplace(keep, Rational(1));
      r += factor * rest;
    }
    return r;
  }

  const std::pair<const Mono, Rational>& leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero");
    return *terms_.begin();
  }

  std::string str() const;  // human-readable, for witnesses and debugging

 private:
  TermMap terms_;
};

// exact multivariate division: returns quotient iff d divides n exactly
// (nullopt otherwise). Single-divisor graded-lex reduction; the leading
// monomial strictly decreases each step, so termination is guaranteed.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& n,
                                             const MultiPoly& d) {
  if (d.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
  MultiPoly q, r = n;
  const auto& [dm, dc] = d.leading();
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    Mono qm;
    for (int i = 0; i < kSymCount; ++i) {
      if (rm[i] < dm[i]) return std::nullopt;
      qm[i] = static_cast<std::uint16_t>(rm[i] - dm[i]);
    }
    MultiPoly qt;
    qt.add_term(qm, rc / dc);
    q += qt;
    r -= qt * d;
  }
  return q;
}

inline std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rational ac = c < 0 ? Rational(-c) : c;
    bool printed = false;
    if (ac != 1 || mono_grade(m) == 0) {
      os << to_string(ac);
      printed = true;
    }
    for (int i = 0; i < kSymCount; ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << sym_name(static_cast<Sym>(i));
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
  }
  return os.str();
}

// ---- small expression DSL so transcriptions read like the source text ----
inline MultiPoly P(Sym s) { return MultiPoly::var(s); }
inline MultiPoly C(long n) { return MultiPoly::constant(Rational(n)); }
inline MultiPoly C(long n, long d) { return MultiPoly::constant(Rational(n, d)); }
inline MultiPoly operator+(MultiPoly p, long n) { return p + C(n); }
inline MultiPoly operator+(long n, MultiPoly p) { return p + C(n); }
inline MultiPoly operator-(MultiPoly p, long n) { return p - C(n); }
inline MultiPoly operator-(long n, MultiPoly p) { return C(n) - p; }
inline MultiPoly operator*(long n, MultiPoly p) { return p.scale(Rational(n)); }
inline MultiPoly operator*(MultiPoly p, long n) { return p.scale(Rational(n)); }

}  // namespace pwl
