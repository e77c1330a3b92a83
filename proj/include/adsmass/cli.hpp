#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// it can be driven from tests.

#include "adsmass/json_io.hpp"
#include "adsmass/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace adsmass::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInputError = 2 };

struct Options {
  std::string command;
  std::string input;
  std::uint64_t seed = 0;
  int samples = 1000;
  bool samples_given = false;
  std::optional<int> budget;
  double tol = 1e-9;
  double rmax = 10.0;
  std::string psi;
  std::string suite = "all";
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"mass",          "invariants",      "check-observer", "check-spinor",
                                             "spinor-map",    "spinor-preimage", "hull-decompose", "hull-witness",
                                             "energy-matrix", "min-norm",        "verify"};
  return c;
}

namespace detail {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json read_input(const Options& o, std::istream& in) {
  if (o.input.empty()) throw InputError("command '" + o.command + "' needs an input file or '-'");
  std::string text;
  if (o.input == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(o.input);
    if (!f) throw InputError("cannot open " + o.input);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

inline json error_json(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
}

inline int emit(std::ostream& out, const json& j, int code) {
  out << j.dump(2) << '\n';
  return code;
}

inline int cmd_mass(const Options& o, const json& input, std::ostream& out) {
  const ConservedCharges mu = charges_from_json(input);
  try {
    json j = to_json(rest_mass(mu, o.tol));
    if (o.budget) j["m_numeric"] = rest_mass_numeric(mu, {*o.budget, o.seed});
    return emit(out, j, kOk);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotPositive) throw;
    return emit(out, {{"error", "NotPositive"}, {"q_min_eigenvalue", e.value()}}, kCheckFailed);
  }
}

inline int cmd_invariants(const json& input, std::ostream& out) {
  const ConservedCharges mu = charges_from_json(input);
  const InvariantPair a = invariants(mu), b = invariants_via_ad(mu);
  const CasimirTraces t = casimir_traces(mu);
  return emit(out,
              {{"alpha", a.alpha}, {"beta", a.beta}, {"alpha_ad", b.alpha}, {"beta_ad", b.beta},
               {"t2", t.t2}, {"t4", t.t4}},
              kOk);
}

inline int cmd_min_norm(const Options& o, const json& input, std::ostream& out) {
  const KillingField K = killing_field_from_json(input);
  MinNormConfig cfg;
  cfg.seed = o.seed;
  cfg.r_max = o.rmax;
  if (o.samples_given) cfg.starts = o.samples;
  const double m = min_norm(K, cfg);
  const double closed = K.A * K.A + K.D.squaredNorm() - K.B.squaredNorm() - K.C.squaredNorm();
  return emit(out,
              {{"min_norm", m},
               {"closed_form", closed},
               {"hypersurface_orthogonal", (K.B.cross(K.C) + K.A * K.D).norm() <= 1e-9 * tolerance_scale(K.magnitude())}},
              kOk);
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  if (o.suite != "all" && std::find(suite_names().begin(), suite_names().end(), o.suite) == suite_names().end())
    throw InputError("unknown suite '" + o.suite + "'");
  const std::vector<CheckRow> rows = verify(o.suite, {o.seed, o.samples});
  json table = json::array();
  bool all = true;
  for (const auto& r : rows) {
    all = all && r.pass;
    table.push_back({{"suite", r.suite},
                     {"check", r.name},
                     {"samples", r.samples},
                     {"max_residual", std::isfinite(r.max_residual) ? json(r.max_residual) : json(nullptr)},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}});
  }
  return emit(out, {{"suite", o.suite}, {"seed", o.seed}, {"samples", o.samples}, {"checks", table}, {"pass", all}},
              all ? kOk : kCheckFailed);
}

inline int dispatch(const Options& o, std::istream& in, std::ostream& out) {
  const std::string& c = o.command;
  if (c == "hull-witness") {
    const HullWitness w = hull_witness();
    return emit(out,
                {{"K", to_json(w.K)},
                 {"x0", json::array({w.x0[0], w.x0[1], w.x0[2]})},
                 {"gap", w.gap},
                 {"D_dot_x0", w.D_dot_x0}},
                kOk);
  }
  if (c == "verify") return cmd_verify(o, out);
  if (c == "spinor-map") {
    const Spinor psi = !o.psi.empty() ? parse_spinor(o.psi) : spinor_from_json(read_input(o, in));
    return emit(out, to_json(spinor_to_killing(psi)), kOk);
  }

  const json input = read_input(o, in);
  if (c == "mass") return cmd_mass(o, input, out);
  if (c == "invariants") return cmd_invariants(input, out);
  if (c == "energy-matrix") {
    const ConservedCharges mu = charges_from_json(input);
    json j = to_json(energy_matrix(mu));
    const PositivityReport p = check_positivity(mu, o.tol);
    j["psd"] = p.psd;
    j["min_eigenvalue"] = p.min_eigenvalue;
    return emit(out, j, kOk);
  }
  if (c == "check-observer") {
    const MembershipReport r = is_observer(killing_field_from_json(input), o.tol);
    return emit(out, to_json(r), r.member ? kOk : kCheckFailed);
  }
  if (c == "check-spinor") {
    const MembershipReport r = is_spinor_killing(killing_field_from_json(input), o.tol);
    return emit(out, to_json(r), r.member ? kOk : kCheckFailed);
  }
  if (c == "spinor-preimage") {
    const KillingField K = killing_field_from_json(input);
    try {
      const Spinor psi = spinor_preimage(K, std::max(o.tol, 1e-8));
      json j = to_json(psi);
      j["round_trip_error"] = max_abs_diff(spinor_to_killing(psi), K);
      return emit(out, j, kOk);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotInSpinorSet) throw;
      return emit(out, error_json(e), kCheckFailed);
    }
  }
  if (c == "hull-decompose") return emit(out, to_json(hull_decompose(killing_field_from_json(input), o.tol)), kOk);
  if (c == "min-norm") return cmd_min_norm(o, input, out);
  throw InputError("unknown command '" + c + "'");
}

}  // namespace detail

/// Exit codes: 0 success, 1 failed check (non-member, Q not psd, failed
/// suite, preimage outside S), 2 input error (usage, malformed JSON, input
/// violating a precondition).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rest mass and observer Killing fields of asymptotically AdS charges", "adsmass"};
  std::string command_help = "one of:";
  for (const auto& c : commands()) command_help += " " + c;
  app.add_option("command", o.command, command_help)->required();
  app.add_option("input", o.input, "input JSON file, or - for stdin");
  app.add_option("--seed", o.seed, "random seed (default 0)");
  auto* samples = app.add_option("--samples", o.samples, "verify: samples per check (default 1000); min-norm: random starts (default 64)");
  app.add_option("--budget", o.budget, "mass: also run rest_mass_numeric with this many samples");
  app.add_option("--tol", o.tol, "membership / positivity tolerance (default 1e-9)");
  app.add_option("--rmax", o.rmax, "static-chart radius for min-norm starts (default 10)");
  app.add_option("--psi", o.psi, "spinor-map: four comma-separated complex components, e.g. \"1,0,1+1i,0\"");
  app.add_option("--suite", o.suite, "verify: clifford|algebra|geometry|sets|mass|all (default all)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }
  o.samples_given = samples->count() > 0;
  if (o.samples <= 0) {
    err << "--samples must be positive\n";
    return kInputError;
  }

  try {
    return detail::dispatch(o, in, out);
  } catch (const detail::InputError& e) {
    err << e.what() << '\n';
    return detail::emit(out, {{"error", "InputError"}, {"message", e.what()}}, kInputError);
  } catch (const json::exception& e) {
    err << e.what() << '\n';
    return detail::emit(out, {{"error", "InputError"}, {"message", e.what()}}, kInputError);
  } catch (const Error& e) {
    return detail::emit(out, detail::error_json(e), kInputError);
  }
}

}  // namespace adsmass::cli
