#pragma once
// Unreduced rational functions. Equality is cross-multiplication; there is
// deliberately no multivariate GCD anywhere, so numerators and denominators
// grow until the term cap trips (callers then fall back to sampled mode).

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pwl/polynomial.hpp"

namespace pwl {

class RationalFunc {
 public:
  RationalFunc() : num_(), den_(MultiPoly::constant(1)) {}
  RationalFunc(MultiPoly n) : num_(std::move(n)), den_(MultiPoly::constant(1)) {}
  RationalFunc(MultiPoly n, MultiPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunc: zero denominator");
  }
  static RationalFunc constant(Rational r) { return RationalFunc(MultiPoly::constant(std::move(r))); }
  static RationalFunc var(Sym s) { return RationalFunc(MultiPoly::var(s)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
    if (a.den_ == b.den_) return RationalFunc(a.num_ + b.num_, a.den_);
    return RationalFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) {
    if (a.den_ == b.den_) return RationalFunc(a.num_ - b.num_, a.den_);
    return RationalFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
    return RationalFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b) {
    if (b.num_.is_zero()) throw std::invalid_argument("RationalFunc: division by zero");
    return RationalFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunc operator-() const { return RationalFunc(-num_, den_); }

  RationalFunc derivative(Sym s) const {
    // quotient rule, unreduced
    return RationalFunc(num_.derivative(s) * den_ - num_ * den_.derivative(s),
                        den_ * den_);
  }

  std::optional<Rational> evaluate(const std::array<Rational, kSymCount>& pt) const {
    Rational d = den_.evaluate(pt);
    if (d == 0) return std::nullopt;  // DivByZero; caller resamples
    return num_.evaluate(pt) / d;
  }
  double evaluate_d(const std::array<double, kSymCount>& pt) const {
    return num_.evaluate_d(pt) / den_.evaluate_d(pt);
  }

  RationalFunc subst(const std::vector<std::pair<Sym, MultiPoly>>& map) const {
    return RationalFunc(num_.subst(map), den_.subst(map));
  }

 private:
  MultiPoly num_, den_;
};

// r1 == r2 as functions: num1*den2 - num2*den1 vanishes identically
inline bool rf_equal(const RationalFunc& r1, const RationalFunc& r2) {
  return (r1.num() * r2.den() - r2.num() * r1.den()).is_zero();
}

// substitute dependent variables by rational images inside a polynomial,
// over a single common denominator (prod of image denominators raised to
// the max degree); avoids the quadratic denominator growth of naive folds
inline RationalFunc subst_vars(const MultiPoly& p,
                               const std::map<Sym, RationalFunc>& images) {
  std::vector<Sym> syms;
  std::vector<int> maxdeg;
  for (const auto& [s, rf] : images) {
    int d = p.degree_in(s);
    if (d > 0) {
      syms.push_back(s);
      maxdeg.push_back(d);
    }
  }
  if (syms.empty()) return RationalFunc(p);

  // power tables for numerators and denominators
  std::vector<std::vector<MultiPoly>> npow(syms.size()), dpow(syms.size());
  MultiPoly common = MultiPoly::constant(1);
  for (std::size_t k = 0; k < syms.size(); ++k) {
    const auto& rf = images.at(syms[k]);
    npow[k].resize(maxdeg[k] + 1);
    dpow[k].resize(maxdeg[k] + 1);
    npow[k][0] = dpow[k][0] = MultiPoly::constant(1);
    for (int e = 1; e <= maxdeg[k]; ++e) {
      npow[k][e] = npow[k][e - 1] * rf.num();
      dpow[k][e] = dpow[k][e - 1] * rf.den();
    }
    common *= dpow[k][maxdeg[k]];
  }

  MultiPoly acc;
  for (const auto& [m, c] : p.terms()) {
    Mono rest = m;
    MultiPoly factor = MultiPoly::constant(c);
    for (std::size_t k = 0; k < syms.size(); ++k) {
      const int i = static_cast<int>(syms[k]);
      const int e = rest[i];
      rest[i] = 0;
      factor *= npow[k][e];
      factor *= dpow[k][maxdeg[k] - e];
    }
    MultiPoly restp;
    restp.add_term(rest, Rational(1));
    acc += factor * restp;
  }
  return RationalFunc(acc, common);
}

inline RationalFunc subst_vars(const RationalFunc& r,
                               const std::map<Sym, RationalFunc>& images) {
  RationalFunc n = subst_vars(r.num(), images);
  RationalFunc d = subst_vars(r.den(), images);
  return n / d;
}

// limit of r as s -> infinity (compare top s-degrees) or s -> 0 (lowest)
enum class LimitPoint { infinity, zero };

struct LimitResult {
  bool finite;
  RationalFunc value;  // meaningful iff finite
};

inline LimitResult param_limit(const RationalFunc& r, Sym s, LimitPoint at) {
  if (r.num().is_zero()) return {true, RationalFunc()};
  int dn, dd;
  if (at == LimitPoint::infinity) {
    dn = r.num().degree_in(s);
    dd = r.den().degree_in(s);
  } else {
    auto lowest = [s](const MultiPoly& p) {
      const int i = static_cast<int>(s);
      int lo = -1;
      for (const auto& [m, c] : p.terms())
        lo = (lo < 0) ? m[i] : std::min(lo, static_cast<int>(m[i]));
      return lo;
    };
    dn = lowest(r.num());
    dd = lowest(r.den());
  }
  const bool diverges = (at == LimitPoint::infinity) ? dn > dd : dn < dd;
  if (diverges) return {false, RationalFunc()};
  if ((at == LimitPoint::infinity) ? dn < dd : dn > dd)
    return {true, RationalFunc()};
  return {true, RationalFunc(r.num().coeff_of(s, dn), r.den().coeff_of(s, dd))};
}

// determinant of the 3x3 Jacobian of (images of vs) with respect to vs
inline RationalFunc jacobian_det(const std::array<RationalFunc, 3>& comp,
                                 const std::array<Sym, 3>& vs) {
  std::array<std::array<RationalFunc, 3>, 3> J;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) J[i][j] = comp[i].derivative(vs[j]);
  auto m2 = [&](int r1, int r2, int c1, int c2) {
    return J[r1][c1] * J[r2][c2] - J[r1][c2] * J[r2][c1];
  };
  return J[0][0] * m2(1, 2, 1, 2) - J[0][1] * m2(1, 2, 0, 2) +
         J[0][2] * m2(1, 2, 0, 1);
}

}  // namespace pwl
