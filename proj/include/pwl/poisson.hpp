#pragma once
// Poisson bracket on the dependent variables and the exponential-series form
// of the generators: s_i(g) = sum_k (1/k!) (alpha_i/f_i)^k ad_{f_i}^k(g).

#include <optional>
#include <vector>

#include "pwl/rational_func.hpp"
#include "pwl/systems.hpp"

namespace pwl {

// bilinear derivation extending {v_i, v_j} = ps.table[i][j]
inline MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g,
                                 const PoissonStructure& ps) {
  MultiPoly out;
  const size_t n = ps.vars.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const int c = ps.table[i][j];
      if (c == 0) continue;
      MultiPoly term = f.derivative(ps.vars[i]) * g.derivative(ps.vars[j]);
      if (c < 0) term.scale(Rational(-1));
      out += term;
    }
  }
  return out;
}

struct PoissonSeriesResult {
  std::vector<RationalFunc> terms;   // nonzero contributions past g itself
  std::optional<int> truncated_at;   // k whose iterated bracket vanished
  RationalFunc total;
};

inline bool series_terminated(const PoissonSeriesResult& r) {
  return r.truncated_at.has_value();
}

// Sums the series for generator i applied to g, stopping when the iterated
// bracket ad_{f_i}^k(g) is exactly zero. A run past nmax is reported through
// truncated_at = nullopt, never silently cut off.
inline PoissonSeriesResult poisson_series_transform(int i, const MultiPoly& g,
                                                    WeylType type,
                                                    int nmax = 12) {
  const auto ps = poisson_structure(type);
  const auto [alpha_sym, f] = series_seed(type, i);
  PoissonSeriesResult res;
  res.total = RationalFunc(g);
  MultiPoly iter = g;
  Rational fact = 1;
  for (int k = 1; k <= nmax; ++k) {
    iter = poisson_bracket(f, iter, ps);
    if (iter.is_zero()) {
      res.truncated_at = k;
      return res;
    }
    fact *= k;
    MultiPoly num = iter * P(alpha_sym).pow(k);
    num.scale(Rational(1) / fact);
    RationalFunc contrib(num, f.pow(k));
    res.terms.push_back(contrib);
    res.total = res.total + contrib;
  }
  return res;  // truncated_at empty: did not terminate within nmax
}

}  // namespace pwl
