#pragma once
// Double-precision cross-checks of the exact layer: an adaptive embedded
// Runge-Kutta pair (Dormand-Prince 4(5)) over the compiled vector fields,
// with trajectory-level symmetry comparison, finite-difference residuals,
// and invariant tracking.
//
// Real arithmetic only. Movable poles are detected (magnitude cap or step
// underflow) and terminate the run with an event; there is no continuation
// through them. Output samples sit on a uniform grid hit exactly by step
// clamping, so the stencil operations below need no interpolation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwl/systems.hpp"

namespace pwl {

struct IntegrationSpec {
  WeylType type = WeylType::d4_1;
  std::map<Sym, double> params;  // normalized parameters plus eta / a / phi
  BSpec b = BSpec::pvi_form;
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<double> initial_state;  // dependent_vars order
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_magnitude = 1e8;
  int output_intervals = 64;  // uniform samples = intervals + 1
};

struct TrajectoryEvent {
  std::string kind;  // "pole" | "step-underflow"
  double t = 0.0;
};

struct Trajectory {
  int dim = 3;
  std::vector<double> t;                     // strictly increasing
  std::vector<std::array<double, 3>> state;  // first dim entries used
  std::vector<TrajectoryEvent> events;
  long long accepted = 0;
  long long rejected = 0;
  bool complete = false;  // reached t1 with no event
};

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
};

namespace detail {

// a MultiPoly compiled to doubles once, for the integrator's inner loop
struct NumPoly {
  struct Term {
    double c;
    std::vector<std::pair<int, int>> pows;  // (symbol index, exponent)
  };
  std::vector<Term> terms;

  static NumPoly compile(const MultiPoly& p) {
    NumPoly out;
    out.terms.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
      Term t{to_double(c), {}};
      for (int i = 0; i < kSymCount; ++i)
        if (m[static_cast<std::size_t>(i)])
          t.pows.emplace_back(i, m[static_cast<std::size_t>(i)]);
      out.terms.push_back(std::move(t));
    }
    return out;
  }

  double eval(const std::array<double, kSymCount>& pt) const {
    double acc = 0.0;
    for (const auto& t : terms) {
      double v = t.c;
      for (const auto& [i, k] : t.pows)
        for (int r = 0; r < k; ++r) v *= pt[static_cast<std::size_t>(i)];
      acc += v;
    }
    return acc;
  }
};

struct NumRational {
  NumPoly num, den;
  static NumRational compile(const RationalFunc& r) {
    return {NumPoly::compile(r.num()), NumPoly::compile(r.den())};
  }
  double eval(const std::array<double, kSymCount>& pt) const {
    return num.eval(pt) / den.eval(pt);
  }
};

}  // namespace detail

// The field compiled for numeric evaluation. The symbol table point carries
// the parameter values (fixed) and the per-call variable and t slots.
class FieldEval {
 public:
  FieldEval(const SystemDef& sys, const std::map<Sym, double>& params)
      : vars_(sys.vars), pre_(detail::NumRational::compile(sys.prefactor)) {
    pt_.fill(0.0);
    for (const auto& [s, v] : params) pt_[static_cast<std::size_t>(s)] = v;
    for (const auto& p : sys.signed_part)
      parts_.push_back(detail::NumPoly::compile(p));
  }

  int dim() const { return static_cast<int>(vars_.size()); }
  const std::vector<Sym>& vars() const { return vars_; }

  // base symbol point with parameters filled in
  std::array<double, kSymCount> point(double t, const double* y) const {
    auto pt = pt_;
    pt[static_cast<std::size_t>(Sym::t)] = t;
    for (std::size_t k = 0; k < vars_.size(); ++k)
      pt[static_cast<std::size_t>(vars_[k])] = y[k];
    return pt;
  }

  // dy/dt; false when the evaluation is not finite (prefactor pole)
  bool operator()(double t, const double* y, double* dy) const {
    const auto pt = point(t, y);
    const double pre = pre_.eval(pt);
    if (!std::isfinite(pre)) return false;
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      dy[k] = pre * parts_[k].eval(pt);
      if (!std::isfinite(dy[k])) return false;
    }
    return true;
  }

 private:
  std::vector<Sym> vars_;
  detail::NumRational pre_;
  std::vector<detail::NumPoly> parts_;
  std::array<double, kSymCount> pt_;
};

namespace detail {

// Dormand-Prince 4(5) pair, FSAL
inline bool dp45_step(const std::function<bool(double, const double*, double*)>& f,
                      double t, const double* y, double h, int n,
                      const double* k1, double* y5, double* err, double* k7) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
  constexpr int kMaxDim = 3;
  double k2[kMaxDim], k3[kMaxDim], k4[kMaxDim], k5[kMaxDim], k6[kMaxDim],
      u[kMaxDim];
  for (int i = 0; i < n; ++i) u[i] = y[i] + h * a21 * k1[i];
  if (!f(t + h / 5, u, k2)) return false;
  for (int i = 0; i < n; ++i) u[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  if (!f(t + 3 * h / 10, u, k3)) return false;
  for (int i = 0; i < n; ++i)
    u[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  if (!f(t + 4 * h / 5, u, k4)) return false;
  for (int i = 0; i < n; ++i)
    u[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  if (!f(t + 8 * h / 9, u, k5)) return false;
  for (int i = 0; i < n; ++i)
    u[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                       a65 * k5[i]);
  if (!f(t + h, u, k6)) return false;
  for (int i = 0; i < n; ++i)
    y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                        b6 * k6[i]);
  if (!f(t + h, y5, k7)) return false;
  for (int i = 0; i < n; ++i)
    err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                  e6 * k6[i] + e7 * k7[i]);
  return true;
}

}  // namespace detail

// Validated construction of the compiled field for a spec. Throws
// std::invalid_argument on violated preconditions, quoting the failed
// normalization when that is the cause.
inline FieldEval make_field(const IntegrationSpec& spec) {
  if (!(spec.rel_tol > 0) || !(spec.abs_tol > 0))
    throw std::invalid_argument("tolerances must be positive");
  std::array<double, kSymCount> pt{};
  for (const auto& [s, v] : spec.params) {
    if (!std::isfinite(v))
      throw std::invalid_argument("parameters must be finite");
    pt[static_cast<std::size_t>(s)] = v;
  }
  const double nres = normalization_residual(spec.type).evaluate_d(pt);
  if (!(std::fabs(nres) <= 1e-14)) {
    std::ostringstream os;
    os << "parameters violate the normalization "
       << normalization_residual(spec.type).str() << " = 0 (residual " << nres
       << ")";
    throw std::invalid_argument(os.str());
  }
  const SystemDef sys = build_vector_field(spec.type, spec.b);
  if (spec.initial_state.size() != sys.vars.size())
    throw std::invalid_argument("initial state has the wrong dimension");
  for (double v : spec.initial_state)
    if (!std::isfinite(v))
      throw std::invalid_argument("initial state must be finite");
  return FieldEval(sys, spec.params);
}

inline Trajectory integrate(const IntegrationSpec& spec) {
  const FieldEval field = make_field(spec);
  const int n = field.dim();
  // a pole of the prefactor at t0 is an immediate error
  {
    double dy[3];
    if (!field(spec.t0, spec.initial_state.data(), dy))
      throw std::invalid_argument("t0 sits on a pole of b(t)");
  }
  if (!(spec.t1 >= spec.t0))
    throw std::invalid_argument("t1 must be >= t0");

  Trajectory traj;
  traj.dim = n;
  std::array<double, 3> y{};
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = spec.initial_state[static_cast<std::size_t>(i)];
  traj.t.push_back(spec.t0);
  traj.state.push_back(y);
  if (spec.t1 == spec.t0) {  // zero-length interval: a single sample
    traj.complete = true;
    return traj;
  }

  const double span = spec.t1 - spec.t0;
  const int intervals = std::max(1, spec.output_intervals);
  const auto grid = [&](int k) { return spec.t0 + span * k / intervals; };
  double t = spec.t0;
  double h = span / 100.0;
  int next = 1;
  double k1[3], y5[3], err[3], k7[3];
  std::function<bool(double, const double*, double*)> f =
      [&field](double tt, const double* yy, double* dd) {
        return field(tt, yy, dd);
      };
  if (!f(t, y.data(), k1)) throw std::invalid_argument("field not finite at t0");
  while (next <= intervals) {
    const double target = grid(next);
    // hs: the step actually taken; h stays the controller's proposal so that
    // clamping to the output grid does not starve subsequent steps
    double hs = h;
    bool clamped = false;
    if (t + hs >= target) {
      hs = target - t;
      clamped = true;
    }
    const double hmin = 16 * std::numeric_limits<double>::epsilon() *
                        std::max(1.0, std::fabs(t));
    if (hs < hmin && !clamped) {
      traj.events.push_back({"step-underflow", t});
      return traj;
    }
    double enorm = 0.0;
    const bool ok = detail::dp45_step(f, t, y.data(), hs, n, k1, y5, err, k7);
    if (ok) {
      for (int i = 0; i < n; ++i) {
        const double sc = spec.abs_tol +
                          spec.rel_tol * std::max(std::fabs(y[static_cast<std::size_t>(i)]),
                                                  std::fabs(y5[i]));
        const double q = err[i] / sc;
        enorm += q * q;
      }
      enorm = std::sqrt(enorm / n);
    }
    if (!ok || enorm > 1.0) {
      ++traj.rejected;
      const double fac = ok ? std::max(0.2, 0.9 * std::pow(enorm, -0.2)) : 0.2;
      h = hs * fac;
      if (h < hmin) {
        traj.events.push_back({"step-underflow", t});
        return traj;
      }
      continue;
    }
    ++traj.accepted;
    for (int i = 0; i < n; ++i) k1[i] = k7[i];  // FSAL
    t = clamped ? target : t + hs;
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = y5[i];
    double mag = 0.0;
    for (int i = 0; i < n; ++i) mag = std::max(mag, std::fabs(y5[i]));
    if (mag > spec.max_magnitude) {
      traj.events.push_back({"pole", t});
      return traj;
    }
    if (clamped) {
      traj.t.push_back(t);
      traj.state.push_back(y);
      ++next;
    }
    const double grow = std::min(5.0, 0.9 * std::pow(std::max(enorm, 1e-10), -0.2));
    h = std::max(clamped ? std::max(h, hs * grow) : hs * grow, hmin);
  }
  traj.complete = true;
  return traj;
}

// |five-point stencil derivative - field| over the interior uniform samples
inline ResidualStats residual(const FieldEval& field, const Trajectory& traj) {
  const int n = traj.dim;
  const std::size_t m = traj.t.size();
  if (m < 5) throw std::invalid_argument("residual needs at least 5 samples");
  const double h = traj.t[1] - traj.t[0];
  ResidualStats st;
  std::size_t count = 0;
  double dy[3];
  for (std::size_t k = 2; k + 2 < m; ++k) {
    if (!field(traj.t[k], traj.state[k].data(), dy)) continue;
    for (int i = 0; i < n; ++i) {
      const double d = (traj.state[k - 2][static_cast<std::size_t>(i)] -
                        8 * traj.state[k - 1][static_cast<std::size_t>(i)] +
                        8 * traj.state[k + 1][static_cast<std::size_t>(i)] -
                        traj.state[k + 2][static_cast<std::size_t>(i)]) /
                       (12 * h);
      const double r = std::fabs(d - dy[i]);
      st.max = std::max(st.max, r);
      st.mean += r;
      ++count;
    }
  }
  if (count) st.mean /= static_cast<double>(count);
  return st;
}

inline ResidualStats residual(const IntegrationSpec& spec,
                              const Trajectory& traj) {
  return residual(make_field(spec), traj);
}

namespace detail {

// numeric application of a birational map to (state, params)
inline bool apply_map_d(const BirationalMap& g,
                        std::array<double, kSymCount>& pt, double* state_out,
                        std::map<Sym, double>& params_io) {
  const auto vars = dependent_vars(g.type);
  std::vector<double> vimg(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const double den = NumPoly::compile(g.var_images[k].den()).eval(pt);
    const double num = NumPoly::compile(g.var_images[k].num()).eval(pt);
    vimg[k] = num / den;
    if (!std::isfinite(vimg[k])) return false;
  }
  const auto as = action_syms(g.type);
  std::map<Sym, double> pimg = params_io;
  for (std::size_t k = 0; k < as.size(); ++k)
    pimg[as[k]] = NumPoly::compile(g.param_action[k]).eval(pt);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    state_out[k] = vimg[k];
    pt[static_cast<std::size_t>(vars[k])] = vimg[k];
  }
  for (const auto& [s, v] : pimg) pt[static_cast<std::size_t>(s)] = v;
  params_io = std::move(pimg);
  return true;
}

}  // namespace detail

// the spec with initial state and parameters pushed through g (numerically)
inline IntegrationSpec transform_spec(const IntegrationSpec& spec,
                                      const BirationalMap& g) {
  IntegrationSpec tspec = spec;
  const FieldEval fe = make_field(spec);
  auto pt = fe.point(spec.t0, spec.initial_state.data());
  double img[3];
  if (!detail::apply_map_d(g, pt, img, tspec.params))
    throw std::runtime_error("map indeterminate at the initial state");
  tspec.initial_state.assign(img, img + fe.dim());
  return tspec;
}

// Integrate under params, integrate the transformed seed under the
// transformed params, and compare the pointwise-transformed first run with
// the second on the shared uniform grid. Throws on an indeterminate map
// evaluation along the path.
inline double numeric_symmetry_check(const IntegrationSpec& spec,
                                     const BirationalMap& g) {
  const Trajectory base = integrate(spec);
  const Trajectory other = integrate(transform_spec(spec, g));

  const FieldEval fe = make_field(spec);
  const std::size_t m = std::min(base.t.size(), other.t.size());
  if (m < 2) throw std::runtime_error("trajectories too short to compare");
  double dev = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    auto pt = fe.point(base.t[k], base.state[k].data());
    double img[3];
    std::map<Sym, double> dummy = spec.params;
    if (!detail::apply_map_d(g, pt, img, dummy))
      throw std::runtime_error("map indeterminate along the trajectory");
    for (int i = 0; i < fe.dim(); ++i)
      dev = std::max(dev, std::fabs(img[i] - other.state[k][static_cast<std::size_t>(i)]));
  }
  return dev;
}

inline double numeric_symmetry_check(const IntegrationSpec& spec,
                                     std::string_view gen_name) {
  const auto gens = generators(spec.type);
  return numeric_symmetry_check(spec, find_generator(gens, gen_name));
}

// max |expr| along the samples (expr over variables, t and parameters)
inline double track_custom(const IntegrationSpec& spec, const Trajectory& traj,
                           const RationalFunc& expr) {
  const FieldEval fe = make_field(spec);
  const auto nr = detail::NumRational::compile(expr);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const auto pt = fe.point(traj.t[k], traj.state[k].data());
    worst = std::max(worst, std::fabs(nr.eval(pt)));
  }
  return worst;
}

// Co-integrate the scalar quartic flow ds/dt = (b/2 eta) s(s+1)(s+1-eta)(s-eta)
// from s(t0) = x(t0) - y(t0) on the same grid and report
// max |(x - y) - s| over the shared samples.
inline double track_x_minus_y(const IntegrationSpec& spec,
                              const Trajectory& traj) {
  if (traj.dim != 3 || traj.t.size() < 2)
    throw std::invalid_argument("x-minus-y tracking needs a 3D trajectory");
  const MultiPoly s = P(Sym::x);  // carrier symbol for the scalar flow
  const MultiPoly e = P(Sym::eta);
  const MultiPoly quartic = s * (s + 1) * (s + 1 - e) * (s - e);
  const RationalFunc rate =
      b_specialization(spec.b) / RationalFunc(2 * e) * RationalFunc(quartic);
  const auto nr = detail::NumRational::compile(rate);
  std::array<double, kSymCount> base{};
  for (const auto& [sym, v] : spec.params)
    base[static_cast<std::size_t>(sym)] = v;
  const auto f = [&](double tt, const double* yy, double* dd) {
    auto pt = base;
    pt[static_cast<std::size_t>(Sym::t)] = tt;
    pt[static_cast<std::size_t>(Sym::x)] = yy[0];
    dd[0] = nr.eval(pt);
    return std::isfinite(dd[0]);
  };
  // one-dimensional run of the same stepper over the same grid
  double sval = traj.state[0][0] - traj.state[0][1];
  double dev = 0.0;
  double k1[3], y5[3], err[3], k7[3];
  double t = traj.t[0];
  double h = (traj.t.back() - traj.t.front()) / 100.0;
  if (!f(t, &sval, k1)) throw std::invalid_argument("scalar flow not finite at t0");
  for (std::size_t next = 1; next < traj.t.size(); ++next) {
    const double target = traj.t[next];
    while (t < target) {
      double hs = h;
      bool clamped = false;
      if (t + hs >= target) {
        hs = target - t;
        clamped = true;
      }
      const double hmin = 16 * std::numeric_limits<double>::epsilon() *
                          std::max(1.0, std::fabs(t));
      if (!detail::dp45_step(f, t, &sval, hs, 1, k1, y5, err, k7)) {
        throw std::runtime_error("scalar flow hit a pole");
      }
      const double sc = spec.abs_tol +
                        spec.rel_tol * std::max(std::fabs(sval), std::fabs(y5[0]));
      const double enorm = std::fabs(err[0]) / sc;
      if (enorm > 1.0) {
        h = hs * std::max(0.2, 0.9 * std::pow(enorm, -0.2));
        if (h < hmin) throw std::runtime_error("scalar flow step underflow");
        continue;
      }
      sval = y5[0];
      k1[0] = k7[0];
      t = clamped ? target : t + hs;
      const double grow =
          std::min(5.0, 0.9 * std::pow(std::max(enorm, 1e-10), -0.2));
      h = std::max(clamped ? std::max(h, hs * grow) : hs * grow, hmin);
    }
    const double xy = traj.state[next][0] - traj.state[next][1];
    dev = std::max(dev, std::fabs(xy - sval));
  }
  return dev;
}

// The fixed reference configuration used by the numeric acceptance checks;
// shipped here so the CLI, tests and demos agree bit for bit.
inline IntegrationSpec healthy_spec() {
  IntegrationSpec s;
  s.type = WeylType::d4_1;
  s.params = {{Sym::alpha0, 0.2}, {Sym::alpha1, 0.2}, {Sym::alpha2, 0.1},
              {Sym::alpha3, 0.2}, {Sym::alpha4, 0.2}, {Sym::eta, 2.0}};
  s.b = BSpec::pvi_form;
  s.t0 = 2.1;
  s.t1 = 2.5;
  s.initial_state = {0.3, 0.4, 0.5};
  return s;
}

// CSV per the interface: header t,x,y,z then one %.17g line per sample
inline void write_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,y,z\n";
  char buf[96];
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", traj.t[k],
                  traj.state[k][0], traj.state[k][1], traj.state[k][2]);
    os << buf << '\n';
  }
}

}  // namespace pwl
