// pwl: run the verification suite, integrate the flows, push parameter
// vectors through group words, and dump the polynomial tables.
//
// Exit codes: 0 success, 1 a check failed (or an indeterminate orbit),
// 2 usage or precondition error. PWL_SEED overrides --seed when set.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwl/numerics.hpp"
#include "pwl/verify.hpp"

namespace {

using nlohmann::json;

json report_json(const std::vector<pwl::VerificationReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json o;
    o["check_id"] = r.check_id;
    o["weyl_type"] = std::string(pwl::weyl_cli_name(r.weyl_type));
    o["mode"] = r.mode;
    o["status"] = r.status;
    o["witness"] = r.witness;
    o["notes"] = r.notes;
    o["elapsed_ms"] = r.elapsed_ms;
    arr.push_back(std::move(o));
  }
  return arr;
}

bool write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream os(path);
  if (!os) return false;
  os << text;
  return os.good();
}

// "p/q", "-3", "0.25" all parse exactly
std::optional<pwl::Rational> parse_rational(const std::string& s) {
  try {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return pwl::Rational(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    bool neg = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
      neg = digits[0] == '-';
      digits.erase(0, 1);
    }
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    pwl::Rational den = 1;
    for (std::size_t k = dot + 1; k < s.size(); ++k) den *= 10;
    pwl::Rational r = pwl::Rational(digits) / den;
    return neg ? -r : r;
  } catch (...) {
    return std::nullopt;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (sep != ' ' || !std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    } else {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::optional<std::vector<double>> parse_doubles(const std::string& s,
                                                 std::size_t n) {
  auto parts = split(s, ',');
  if (parts.size() != n) return std::nullopt;
  std::vector<double> out;
  for (const auto& p : parts) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(p, &used));
      if (used != p.size()) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
  }
  return out;
}

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

// default exact parameter vectors for orbit, satisfying each normalization
std::vector<pwl::Rational> default_params(pwl::WeylType t) {
  using pwl::Rational;
  using pwl::WeylType;
  switch (t) {
    case WeylType::d4_1:
    case WeylType::d4_1_reduced:
      return {Rational(1, 8), Rational(1, 8), Rational(1, 4), Rational(1, 8),
              Rational(1, 8)};
    case WeylType::b3_1:
      return {Rational(1, 4), Rational(1, 4), Rational(1, 8), Rational(1, 8)};
    case WeylType::d3_2:
      return {Rational(1, 6), Rational(1, 6), Rational(1, 6)};
    case WeylType::g2_1:
      return {Rational(1, 6), Rational(1, 6), Rational(1, 6)};
    case WeylType::a2_2:
      return {Rational(1, 4), Rational(1, 8)};
    case WeylType::a3_1_pv:
      return {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    case WeylType::c2_1_piii:
      return {Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  }
  return {};
}

struct VerifyArgs {
  std::string type = "all";
  std::vector<std::string> checks;
  std::string mode = "auto";
  std::uint64_t seed = pwl::kDefaultSeed;
  std::uint64_t term_cap = 2'000'000;
  std::string json_path;
};

int cmd_verify(const VerifyArgs& a) {
  pwl::SuiteRequest req;
  if (a.type != "all") {
    auto t = pwl::weyl_from_cli(a.type);
    if (!t) return fail_usage("unknown type '" + a.type + "'");
    req.types = {*t};
  }
  bool run_all_checks = a.checks.empty();
  for (const auto& c : a.checks) {
    if (c == "all") {
      run_all_checks = true;
      continue;
    }
    const auto& reg = pwl::check_registry();
    if (std::find(reg.begin(), reg.end(), c) == reg.end())
      return fail_usage("unknown check '" + c + "'");
  }
  if (!run_all_checks) req.checks = a.checks;
  auto mode = pwl::check_mode_from_name(a.mode);
  if (!mode) return fail_usage("unknown mode '" + a.mode + "'");
  req.mode = *mode;
  req.seed = a.seed;
  if (a.term_cap < 1000) return fail_usage("term cap must be at least 1000");
  pwl::term_cap() = a.term_cap;

  const auto reports = pwl::run_suite(req);
  int pass = 0, failed = 0, blowup = 0, skip = 0;
  for (const auto& r : reports) {
    if (r.status == "pass") ++pass;
    else if (r.status == "fail") ++failed;
    else if (r.status == "blowup") ++blowup;
    else ++skip;
    std::cout << r.status << "\t" << r.check_id << " [" << r.mode << "]";
    if (!r.witness.empty()) std::cout << " witness: " << r.witness;
    if (!r.notes.empty()) std::cout << " notes: " << r.notes;
    std::cout << "\n";
  }
  std::cout << reports.size() << " checks: " << pass << " pass, " << failed
            << " fail, " << blowup << " blowup, " << skip << " skip\n";
  if (!a.json_path.empty()) {
    if (!write_text(a.json_path, report_json(reports).dump(2) + "\n"))
      return fail_usage("cannot write '" + a.json_path + "'");
  }
  return pwl::all_passed(reports) ? 0 : 1;
}

struct IntegrateArgs {
  std::string type;
  std::string params;
  std::string b = "pvi-form";
  double t0 = 0, t1 = 0;
  std::string state;
  double eta = 2.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_magnitude = 1e8;
  std::string csv_path, json_path;
};

int cmd_integrate(const IntegrateArgs& a) {
  auto t = pwl::weyl_from_cli(a.type);
  if (!t) return fail_usage("unknown type '" + a.type + "'");
  if (pwl::dependent_vars(*t).size() != 3 || *t == pwl::WeylType::a3_1_pv ||
      *t == pwl::WeylType::c2_1_piii)
    return fail_usage(
        "integrate supports the three-variable systems driven by b(t): "
        "d4, b3, d3, g2, a2");
  auto b = pwl::bspec_from_name(a.b);
  if (!b || *b != pwl::BSpec::pvi_form)
    return fail_usage("integrate needs --b pvi-form (a concrete b(t))");

  pwl::IntegrationSpec spec;
  spec.type = *t;
  spec.b = *b;
  const auto ps = pwl::param_syms(*t);
  auto pv = parse_doubles(a.params, ps.size());
  if (!pv)
    return fail_usage("--params wants " + std::to_string(ps.size()) +
                      " comma-separated numbers for " +
                      std::string(pwl::weyl_cli_name(*t)));
  for (std::size_t k = 0; k < ps.size(); ++k) spec.params[ps[k]] = (*pv)[k];
  spec.params[pwl::Sym::eta] = a.eta;
  auto st = parse_doubles(a.state, 3);
  if (!st) return fail_usage("--state wants x,y,z");
  spec.initial_state = *st;
  spec.t0 = a.t0;
  spec.t1 = a.t1;
  spec.rel_tol = a.rel_tol;
  spec.abs_tol = a.abs_tol;
  spec.max_magnitude = a.max_magnitude;

  pwl::Trajectory traj;
  try {
    traj = pwl::integrate(spec);
  } catch (const std::invalid_argument& e) {
    return fail_usage(e.what());
  }

  json summary;
  summary["complete"] = traj.complete;
  summary["samples"] = traj.t.size();
  summary["accepted"] = traj.accepted;
  summary["rejected"] = traj.rejected;
  summary["events"] = json::array();
  for (const auto& e : traj.events)
    summary["events"].push_back({{"kind", e.kind}, {"t", e.t}});
  if (traj.t.size() >= 5) {
    const auto rs = pwl::residual(spec, traj);
    summary["residual"] = {{"max", rs.max}, {"mean", rs.mean}};
  } else {
    summary["residual"] = nullptr;
  }

  if (!a.csv_path.empty()) {
    std::ostringstream os;
    pwl::write_csv(os, traj);
    if (!write_text(a.csv_path, os.str()))
      return fail_usage("cannot write '" + a.csv_path + "'");
  }
  if (!a.json_path.empty()) {
    if (!write_text(a.json_path, summary.dump(2) + "\n"))
      return fail_usage("cannot write '" + a.json_path + "'");
  }
  if (a.csv_path != "-" && a.json_path != "-") {
    std::cout << (traj.complete ? "complete" : "stopped") << ", "
              << traj.t.size() << " samples";
    for (const auto& e : traj.events)
      std::cout << ", " << e.kind << " at t=" << e.t;
    if (summary["residual"].is_object())
      std::cout << ", residual max " << summary["residual"]["max"].get<double>();
    std::cout << "\n";
  }
  return 0;
}

struct OrbitArgs {
  std::string type;
  std::string word;
  std::string params;
  std::string state;
  std::string eta = "2", aa = "1", phi = "-2", tt = "2";
};

int cmd_orbit(const OrbitArgs& a) {
  auto t = pwl::weyl_from_cli(a.type);
  if (!t) return fail_usage("unknown type '" + a.type + "'");
  const auto gens = pwl::generators(*t);
  const auto word = split(a.word, ' ');
  if (word.empty()) return fail_usage("--word is empty");
  for (const auto& w : word) {
    bool known = false;
    for (const auto& g : gens) known = known || g.name == w;
    if (!known)
      return fail_usage("'" + w + "' is not a generator of " +
                        std::string(pwl::weyl_cli_name(*t)));
  }

  const auto ps = pwl::param_syms(*t);
  std::vector<pwl::Rational> pv;
  if (a.params.empty()) {
    pv = default_params(*t);
  } else {
    for (const auto& tok : split(a.params, ',')) {
      auto r = parse_rational(tok);
      if (!r) return fail_usage("cannot parse rational '" + tok + "'");
      pv.push_back(*r);
    }
    if (pv.size() != ps.size())
      return fail_usage("--params wants " + std::to_string(ps.size()) +
                        " comma-separated rationals for " +
                        std::string(pwl::weyl_cli_name(*t)));
  }

  pwl::StateMap st;
  for (std::size_t k = 0; k < ps.size(); ++k) st[ps[k]] = pv[k];
  for (auto [flag, sym] :
       {std::pair{&a.eta, pwl::Sym::eta}, {&a.aa, pwl::Sym::a},
        {&a.phi, pwl::Sym::phi}, {&a.tt, pwl::Sym::t}}) {
    auto r = parse_rational(*flag);
    if (!r) return fail_usage("cannot parse rational '" + *flag + "'");
    st[sym] = *r;
  }

  const auto vars = pwl::dependent_vars(*t);
  const bool with_state = !a.state.empty();
  if (with_state) {
    auto toks = split(a.state, ',');
    if (toks.size() != vars.size())
      return fail_usage("--state wants " + std::to_string(vars.size()) +
                        " comma-separated rationals");
    for (std::size_t k = 0; k < vars.size(); ++k) {
      auto r = parse_rational(toks[k]);
      if (!r) return fail_usage("cannot parse rational '" + toks[k] + "'");
      st[vars[k]] = *r;
    }
    auto img = pwl::apply_word(gens, word, st);
    if (!img) {
      std::cerr << "indeterminate: a denominator vanishes along the word at "
                   "this state\n";
      return 1;
    }
    st = *img;
  } else {
    // parameter action only; reflections act on parameters independently of
    // the dependent variables
    for (const auto& w : word) {
      const auto& g = pwl::find_generator(gens, w);
      const auto pt = pwl::state_point(st);
      const auto as = pwl::action_syms(*t);
      pwl::StateMap next = st;
      for (std::size_t k = 0; k < as.size(); ++k)
        next[as[k]] = g.param_action[k].evaluate(pt);
      st = next;
    }
  }

  for (pwl::Sym s : pwl::action_syms(*t))
    std::cout << pwl::sym_name(s) << " = " << pwl::to_string(st[s]) << "\n";
  if (with_state)
    for (pwl::Sym v : vars)
      std::cout << pwl::sym_name(v) << " = " << pwl::to_string(st[v]) << "\n";
  return 0;
}

int cmd_dump(const std::string& type) {
  auto t = pwl::weyl_from_cli(type);
  if (!t) return fail_usage("unknown type '" + type + "'");
  const auto sys = pwl::build_vector_field(*t);
  for (std::size_t i = 0; i < sys.signed_part.size(); ++i) {
    std::cout << "# " << pwl::weyl_cli_name(*t) << " F" << i << " ("
              << pwl::sym_name(sys.vars[i]) << ")\n";
    std::cout << pwl::dump_poly(sys.signed_part[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine Weyl symmetric ODE systems: verify, integrate, orbit, dump"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run structural checks");
  verify->add_option("--type", va.type, "system tag or 'all'");
  verify->add_option("--check", va.checks,
                     "check name(s) from the registry, or 'all'");
  verify->add_option("--mode", va.mode, "symbolic | sampled | auto");
  verify->add_option("--seed", va.seed, "sampling seed");
  verify->add_option("--term-cap", va.term_cap,
                     "polynomial term cap (>= 1000)");
  verify->add_option("--json", va.json_path, "write report array ('-' stdout)");

  IntegrateArgs ia;
  auto* integ = app.add_subcommand("integrate", "adaptive RK45 over [t0, t1]");
  integ->add_option("--type", ia.type, "d4 | b3 | d3 | g2 | a2")->required();
  integ->add_option("--params", ia.params, "parameter values, comma list")
      ->required();
  integ->add_option("--b", ia.b, "b(t) specialization");
  integ->add_option("--eta", ia.eta, "eta value");
  integ->add_option("--t0", ia.t0, "start time")->required();
  integ->add_option("--t1", ia.t1, "end time")->required();
  integ->add_option("--state", ia.state, "initial x,y,z")->required();
  integ->add_option("--rel-tol", ia.rel_tol, "relative tolerance");
  integ->add_option("--abs-tol", ia.abs_tol, "absolute tolerance");
  integ->add_option("--max-magnitude", ia.max_magnitude,
                    "pole detection threshold");
  integ->add_option("--csv", ia.csv_path, "write trajectory CSV ('-' stdout)");
  integ->add_option("--json", ia.json_path, "write run summary ('-' stdout)");

  OrbitArgs oa;
  auto* orbit = app.add_subcommand("orbit", "apply a group word exactly");
  orbit->add_option("--type", oa.type, "system tag")->required();
  orbit->add_option("--word", oa.word, "generator names, e.g. \"s0 s2 s1\"")
      ->required();
  orbit->add_option("--params", oa.params, "exact rationals, comma list");
  orbit->add_option("--state", oa.state, "exact rational state, comma list");
  orbit->add_option("--eta", oa.eta, "eta value (exact rational)");
  orbit->add_option("--a", oa.aa, "a value (exact rational)");
  orbit->add_option("--phi", oa.phi, "phi value (exact rational)");
  orbit->add_option("--t", oa.tt, "t value (exact rational)");

  std::string dump_type;
  auto* dump = app.add_subcommand("dump", "monomial-per-line polynomial table");
  dump->add_option("--type", dump_type, "system tag")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (const char* env = std::getenv("PWL_SEED")) {
    try {
      std::size_t used = 0;
      va.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("");
    } catch (...) {
      return fail_usage("PWL_SEED must be an unsigned integer");
    }
  }

  try {
    if (verify->parsed()) return cmd_verify(va);
    if (integ->parsed()) return cmd_integrate(ia);
    if (orbit->parsed()) return cmd_orbit(oa);
    if (dump->parsed()) return cmd_dump(dump_type);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
