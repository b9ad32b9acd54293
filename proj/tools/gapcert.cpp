#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapcert/boundchain/boundchain.hpp"
#include "gapcert/constaudit/audit.hpp"
#include "gapcert/constaudit/registry.hpp"
#include "gapcert/egyptian/egyptian.hpp"
#include "gapcert/errors.hpp"
#include "gapcert/gapsearch/dim1.hpp"
#include "gapcert/gapsearch/gapsearch.hpp"
#include "gapcert/hyperstd/hyperstd.hpp"

using gapcert::BigInt;
using gapcert::Rational;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit : int { kOk = 0, kFalsified = 1, kInconclusive = 2, kUsage = 3 };

struct Options {
  unsigned long p = 1;
  unsigned long q = 0;
  unsigned n = 1;
  std::string delta;
  std::string value;
  std::string caps;
  std::string id;
  int precision_bits = 96;
  bool as_json = false;
  bool stable = false;
};

// Result of one subcommand: payload, human text and exit code.
struct Outcome {
  json payload = json::object();
  std::vector<std::string> lines;
  int code = kOk;
};

json rat(const Rational& x) { return gapcert::to_string(x); }
json big(const BigInt& x) { return gapcert::to_string(x); }

json mag(const gapcert::Magnitude& m) {
  return {{"reciprocal", m.reciprocal()},
          {"level", m.level()},
          {"lo", gapcert::to_string(m.lo())},
          {"hi", gapcert::to_string(m.hi())}};
}

json rats(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(rat(x));
  return a;
}

std::string join(const std::vector<Rational>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + gapcert::to_string(x);
  return "{" + s + "}";
}

json witness_pairs(const std::vector<gapcert::HyperElem>& w) {
  std::vector<std::pair<BigInt, BigInt>> pairs;
  for (const auto& e : w) pairs.emplace_back(e.n, e.k);
  std::sort(pairs.begin(), pairs.end());
  json a = json::array();
  for (const auto& [n, k] : pairs) a.push_back({big(n), big(k)});
  return a;
}

// Small integers serialize as numbers so witnesses read naturally.
json compact(const json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (!s.empty() && s.size() < 16 && s.find('/') == std::string::npos) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
      } catch (const std::exception&) {
      }
    }
    return j;
  }
  if (!j.is_structured()) return j;
  json out = j;
  for (auto& e : out) e = compact(e);
  return out;
}

Rational parse_value(const std::string& text, const char* flag) {
  if (text.empty()) throw gapcert::PreconditionError(std::string("missing ") + flag);
  return gapcert::parse_rational(text);
}

gapcert::SearchCaps caps_of(const Options& o) {
  return o.caps.empty() ? gapcert::SearchCaps{} : gapcert::parse_caps(o.caps);
}

json report_json(const gapcert::BoundReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"claim", c.claim},
                      {"expected", gapcert::to_string(c.expected)},
                      {"outcome", gapcert::to_string(c.outcome)},
                      {"certified", c.certified()}});
  }
  json j = {{"quantity", r.quantity},
            {"p", r.p},
            {"direction", gapcert::to_string(r.direction)},
            {"value", mag(r.value)},
            {"trace", r.trace},
            {"checks", checks}};
  if (r.exact_value) j["exact_value"] = rat(*r.exact_value);
  return j;
}

int report_code(const std::vector<const gapcert::BoundReport*>& rs) {
  int code = kOk;
  for (const auto* r : rs) {
    for (const auto& c : r->checks) {
      if (c.outcome == gapcert::CompareOutcome::Inconclusive) {
        code = std::max(code, int(kInconclusive));
      } else if (!c.certified()) {
        return kFalsified;
      }
    }
  }
  return code;
}

void report_lines(const gapcert::BoundReport& r, std::vector<std::string>& lines) {
  lines.push_back(r.quantity + "(" + std::to_string(r.p) + ") " + gapcert::to_string(r.direction) +
                  ": " + gapcert::describe(r.value));
  for (const auto& c : r.checks) {
    lines.push_back("  " + c.claim + ": " + gapcert::to_string(c.outcome) +
                    (c.certified() ? "" : " (expected " + gapcert::to_string(c.expected) + ")"));
  }
}

Outcome cmd_epsilon1(const Options& o) {
  Outcome out;
  auto c = gapcert::min_sum_exceeding(o.p, o.q, caps_of(o));
  out.payload = {{"value", rat(c.value)},
                 {"witness", witness_pairs(c.witness)},
                 {"status", gapcert::to_string(c.status)},
                 {"caps", gapcert::to_string(c.caps)},
                 {"floor_index", c.floor_index},
                 {"floor_check", gapcert::to_string(c.floor_check)},
                 {"tight", c.tight}};
  if (c.sylvester_floor) out.payload["sylvester_floor"] = rat(*c.sylvester_floor);
  std::vector<Rational> vals;
  for (const auto& e : c.witness) vals.push_back(e.value());
  out.lines.push_back("epsilon1(" + std::to_string(o.p) + ", " + std::to_string(o.q) +
                      ") = " + gapcert::to_string(c.value));
  out.lines.push_back("witness " + join(vals));
  out.lines.push_back("status " + gapcert::to_string(c.status) + (c.tight ? ", tight" : ""));
  if (c.status != gapcert::SearchStatus::Proven) out.code = kInconclusive;
  return out;
}

Outcome cmd_epsilon2(const Options& o) {
  Outcome out;
  auto e = gapcert::epsilon2(o.p, o.q, caps_of(o));
  out.payload = {{"lo", rat(e.lo)},
                 {"hi", rat(e.hi)},
                 {"exact", e.exact},
                 {"epsilon1", rat(e.eps1.value)},
                 {"witness", witness_pairs(e.eps1.witness)},
                 {"status", gapcert::to_string(e.eps1.status)}};
  if (e.exact) {
    out.payload["value"] = rat(e.lo);
    out.lines.push_back("epsilon2(" + std::to_string(o.p) + ", " + std::to_string(o.q) +
                        ") = " + gapcert::to_string(e.lo));
  } else {
    out.lines.push_back("epsilon2(" + std::to_string(o.p) + ", " + std::to_string(o.q) +
                        ") in [" + gapcert::to_string(e.lo) + ", " + gapcert::to_string(e.hi) + "]");
    out.code = kInconclusive;
  }
  return out;
}

Outcome gap_outcome(const gapcert::Dim1GapReport& r) {
  Outcome out;
  out.payload = {{"kind", gapcert::to_string(r.kind)},
                 {"p", r.p},
                 {"value", rat(r.gap)},
                 {"gammas", rats(r.gammas)},
                 {"t", rat(r.t)},
                 {"multiplicity", r.multiplicity}};
  out.lines.push_back(gapcert::to_string(r.kind) + " gap(1, " + std::to_string(r.p) +
                      ") = " + gapcert::to_string(r.gap));
  out.lines.push_back("gammas " + join(r.gammas) + ", t = " + gapcert::to_string(r.t) +
                      " with multiplicity " + std::to_string(r.multiplicity));
  return out;
}

Outcome cmd_eq2(const Options& o) {
  Outcome out;
  const Rational delta = parse_value(o.delta, "--delta");
  auto r = gapcert::equation_two_solver(o.p, delta, caps_of(o));
  out.payload = {{"sat", r.sat}, {"gammas", rats(r.gammas)}, {"bs", rats(r.bs)}};
  out.lines.push_back(r.sat ? "solution gammas " + join(r.gammas) + ", b " + join(r.bs)
                            : "no solution");
  return out;
}

Outcome cmd_curve_index(const Options& o) {
  Outcome out;
  const Rational b = parse_value(o.value, "--value");
  BigInt index = gapcert::curve_complement_index(o.p, b);
  out.payload = {{"value", big(index)}};
  out.lines.push_back("I = " + gapcert::to_string(index));
  return out;
}

Outcome cmd_curtiss(const Options& o) {
  Outcome out;
  auto r = gapcert::curtiss_min_gap(o.n);
  json w = json::array();
  for (const auto& m : r.witness) w.push_back(big(m));
  out.payload = {{"value", rat(r.gap)}, {"witness", w}};
  std::string d;
  for (const auto& m : r.witness) d += (d.empty() ? "" : ", ") + ("1/" + gapcert::to_string(m));
  out.lines.push_back("min gap(" + std::to_string(o.n) + ") = " + gapcert::to_string(r.gap));
  out.lines.push_back("witness {" + d + "}");
  return out;
}

Outcome cmd_sylvester(const Options& o) {
  Outcome out;
  auto s = gapcert::sylvester(o.n);
  out.payload = {{"n", s.n}, {"bound", mag(s.bound)}};
  if (s.exact) {
    out.payload["value"] = big(*s.exact);
    out.lines.push_back("S_" + std::to_string(o.n) + " = " + gapcert::to_string(*s.exact));
  } else {
    out.lines.push_back("S_" + std::to_string(o.n) + " <= " + gapcert::describe(s.bound));
  }
  return out;
}

Outcome cmd_max_under(const Options& o) {
  Outcome out;
  const Rational r = parse_value(o.value, "--value");
  auto u = gapcert::max_unit_sum_under(r, o.n);
  json w = json::array();
  for (const auto& m : u.witness) w.push_back(big(m));
  out.payload = {{"value", rat(u.best)}, {"witness", w}, {"capped", u.capped}};
  out.lines.push_back("best sum of " + std::to_string(o.n) + " unit fractions below " +
                      gapcert::to_string(r) + ": " + gapcert::to_string(u.best));
  if (u.capped) out.code = kInconclusive;
  return out;
}

Outcome cmd_member(const Options& o) {
  Outcome out;
  const Rational x = parse_value(o.value, "--value");
  auto m = gapcert::membership(o.p, x);
  out.payload = {{"member", m.has_value()}};
  if (m) {
    out.payload["n"] = big(m->n);
    out.payload["k"] = big(m->k);
    out.lines.push_back("member: " + gapcert::to_string(*m));
  } else {
    out.lines.push_back("not a member");
  }
  return out;
}

Outcome cmd_beta(const Options& o, gapcert::Precision prec) {
  Outcome out;
  auto s = gapcert::beta_suite(o.p, prec);
  out.payload = {{"beta", report_json(s.beta)}, {"l", report_json(s.l)}};
  report_lines(s.beta, out.lines);
  report_lines(s.l, out.lines);
  out.code = report_code({&s.beta, &s.l});
  return out;
}

Outcome cmd_upsilon(const Options& o, gapcert::Precision prec) {
  Outcome out;
  auto s = gapcert::beta_suite(o.p, prec);
  out.payload = {{"upsilon", report_json(s.upsilon)}};
  report_lines(s.upsilon, out.lines);
  out.code = report_code({&s.upsilon});
  return out;
}

json constant_json(const gapcert::ConstantValue& v) {
  json j = {{"id", v.id}, {"enclosure", mag(v.enclosure)}};
  if (v.exact) j["exact"] = rat(*v.exact);
  if (v.normal_form) {
    json nf = json::object();
    for (const auto& [prime, e] : *v.normal_form) nf[gapcert::to_string(prime)] = big(e);
    j["normal_form"] = nf;
  }
  return j;
}

Outcome cmd_constants(const Options& o, gapcert::Precision prec) {
  Outcome out;
  if (!o.id.empty()) {
    const auto& c = gapcert::find_constant(o.id);
    auto v = gapcert::eval_constant(o.id, prec);
    out.payload = constant_json(v);
    out.payload["expression"] = c.expression;
    out.payload["location"] = c.location;
    out.lines.push_back(c.id + " = " + c.expression);
    if (v.normal_form) out.lines.push_back("  prime exponents " + gapcert::to_string(*v.normal_form));
    out.lines.push_back("  enclosure " + gapcert::describe(v.enclosure));
    if (!o.value.empty()) {
      const Rational claimed = gapcert::parse_rational(o.value);
      if (claimed <= 0) throw gapcert::DomainError("claimed value must be positive");
      const auto c = v.exact ? (*v.exact == claimed ? gapcert::CompareOutcome::EQ
                                                    : gapcert::CompareOutcome::GT)
                             : gapcert::mag_compare(v.enclosure,
                                                    gapcert::Magnitude::from_rational(claimed, prec),
                                                    prec);
      const auto verdict = c == gapcert::CompareOutcome::EQ ? gapcert::Verdict::Verified
                           : c == gapcert::CompareOutcome::Inconclusive ? gapcert::Verdict::Inconclusive
                                                                        : gapcert::Verdict::Falsified;
      out.payload["claimed"] = rat(claimed);
      out.payload["verdict"] = gapcert::to_string(verdict);
      out.lines.push_back("  claim " + gapcert::to_string(claimed) + ": " + gapcert::to_string(verdict));
      if (verdict == gapcert::Verdict::Falsified) out.code = kFalsified;
      if (verdict == gapcert::Verdict::Inconclusive) out.code = kInconclusive;
    }
    return out;
  }
  json rows = json::array();
  for (const auto& c : gapcert::constant_registry()) {
    rows.push_back({{"id", c.id}, {"location", c.location}, {"expression", c.expression}});
    out.lines.push_back(c.id + " | " + c.location + " | " + c.expression);
  }
  out.payload = {{"constants", rows}};
  return out;
}

Outcome cmd_audit_all(gapcert::Precision prec) {
  Outcome out;
  json audits = json::array();
  for (const auto& a : gapcert::audit_constants(prec)) {
    audits.push_back({{"claim", a.claim},
                      {"verdict", gapcert::to_string(a.verdict)},
                      {"expected", gapcert::to_string(a.expected)},
                      {"method", gapcert::to_string(a.method)},
                      {"evidence", a.evidence}});
    out.lines.push_back(std::string(a.as_expected() ? "ok   " : "FAIL ") +
                        gapcert::to_string(a.verdict) + ": " + a.claim);
    if (a.verdict == gapcert::Verdict::Inconclusive) {
      out.code = std::max(out.code, int(kInconclusive));
    } else if (!a.as_expected()) {
      out.code = kFalsified;
    }
  }
  json betas = json::array();
  for (unsigned long p = 2; p <= 10; ++p) {
    auto s = gapcert::beta_suite(p, prec);
    betas.push_back({{"p", p},
                     {"beta", report_json(s.beta)},
                     {"l", report_json(s.l)},
                     {"upsilon", report_json(s.upsilon)}});
    int code = report_code({&s.beta, &s.l, &s.upsilon});
    out.lines.push_back(std::string(code == kOk ? "ok   " : "FAIL ") + "beta suite p=" +
                        std::to_string(p));
    if (code == kFalsified) {
      out.code = kFalsified;
    } else if (out.code != kFalsified) {
      out.code = std::max(out.code, code);
    }
  }
  out.payload = {{"audits", audits}, {"beta_suite", betas}};
  out.payload["status"] = out.code == kOk ? "verified" : out.code == kFalsified ? "falsified"
                                                                                 : "inconclusive";
  return out;
}

int fail(int code, const std::string& kind, const std::string& message, const Options& o) {
  if (o.as_json) {
    json j = {{"error", kind}, {"message", message}, {"version", kVersion}};
    std::cout << j.dump() << "\n";
  }
  std::cerr << "error: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified arithmetic for hyperstandard gaps, Sylvester estimates and tower bounds",
               "gapcert"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.as_json, "Emit a structured report");
  app.add_flag("--stable", o.stable, "Omit the elapsed time from structured reports");
  app.add_option("--precision-bits", o.precision_bits, "Dyadic precision in bits")
      ->check(CLI::Range(32, 1 << 16));
  app.add_option("--caps", o.caps, "Search caps, depth=D,den=N");

  struct Sub {
    const char* name;
    const char* help;
    bool p, q, n, delta, value, id;
  };
  const std::vector<Sub> subs = {
      {"epsilon1", "Gap above q among sums of hyperstandard elements", true, true, false, false, false, false},
      {"epsilon2", "Relative gap e/(q+e)", true, true, false, false, false, false},
      {"lct-gap", "Dimension-one lct gap", true, false, false, false, false, false},
      {"glct-gap", "Dimension-one glct gap", true, false, false, false, false, false},
      {"mld-gap", "Dimension-one mld gap", true, false, false, false, false, false},
      {"eq2", "Solve 2 = sum gamma_i + sum b_j with b_j in (1-delta, 1)", true, false, false, true, false, false},
      {"curve-index", "Complement index of a coefficient on a curve", true, false, false, false, true, false},
      {"curtiss", "Smallest positive 1 - sum of n unit fractions", false, false, true, false, false, false},
      {"sylvester", "n-th Sylvester number", false, false, true, false, false, false},
      {"max-under", "Largest sum of n unit fractions below a value", false, false, true, false, true, false},
      {"member", "Membership in the hyperstandard set", true, false, false, false, true, false},
      {"beta", "Certified beta lower bound and l upper bound", true, false, false, false, false, false},
      {"upsilon", "Certified upsilon lower bound", true, false, false, false, false, false},
      {"constants", "List or evaluate registered constants", false, false, false, false, false, true},
      {"audit-all", "Run every constant audit and the beta suite", false, false, false, false, false, false},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    if (s.p) sub->add_option("--p", o.p, "Hyperstandard parameter")->check(CLI::PositiveNumber);
    if (s.q) sub->add_option("--q", o.q, "Target integer")->check(CLI::NonNegativeNumber);
    if (s.n) sub->add_option("--n", o.n, "Count or index")->check(CLI::PositiveNumber);
    if (s.delta) sub->add_option("--delta", o.delta, "Rational a/b")->required();
    if (s.value) sub->add_option("--value", o.value, "Rational a/b")->required();
    if (s.id) {
      sub->add_option("--id", o.id, "Constant id");
      sub->add_option("--value", o.value, "Claimed value a/b to check against the constant")
          ->needs("--id");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const gapcert::Precision prec{o.precision_bits};
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (command == "epsilon1") out = cmd_epsilon1(o);
    else if (command == "epsilon2") out = cmd_epsilon2(o);
    else if (command == "lct-gap") out = gap_outcome(gapcert::lct_gap_dim1(o.p));
    else if (command == "glct-gap") out = gap_outcome(gapcert::glct_max_dim1(o.p, caps_of(o)));
    else if (command == "mld-gap") out = gap_outcome(gapcert::mld_gap_dim1(o.p, caps_of(o)));
    else if (command == "eq2") out = cmd_eq2(o);
    else if (command == "curve-index") out = cmd_curve_index(o);
    else if (command == "curtiss") out = cmd_curtiss(o);
    else if (command == "sylvester") out = cmd_sylvester(o);
    else if (command == "max-under") out = cmd_max_under(o);
    else if (command == "member") out = cmd_member(o);
    else if (command == "beta") out = cmd_beta(o, prec);
    else if (command == "upsilon") out = cmd_upsilon(o, prec);
    else if (command == "constants") out = cmd_constants(o, prec);
    else out = cmd_audit_all(prec);
  } catch (const gapcert::PrecisionExhausted& e) {
    return fail(kInconclusive, "inconclusive", e.what(), o);
  } catch (const gapcert::CapError& e) {
    return fail(kUsage, "cap", e.what(), o);
  } catch (const gapcert::PreconditionError& e) {
    return fail(kUsage, "precondition", e.what(), o);
  } catch (const gapcert::DomainError& e) {
    return fail(kUsage, "domain", e.what(), o);
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, "usage", e.what(), o);
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (o.as_json) {
    json report = compact(out.payload);
    report["command"] = command;
    json inputs = json::object();
    for (const CLI::Option* opt : app.get_subcommands().front()->get_options()) {
      if (opt->count() > 0 && !opt->get_lnames().empty()) {
        inputs[opt->get_lnames().front()] = opt->results().front();
      }
    }
    for (const char* name : {"caps", "precision-bits"}) {
      if (app.count(std::string("--") + name) > 0) {
        inputs[name] = app.get_option(std::string("--") + name)->results().front();
      }
    }
    report["inputs"] = inputs;
    report["version"] = kVersion;
    if (!o.stable) report["elapsed_ms"] = elapsed;
    std::cout << report.dump() << "\n";
  } else {
    for (const auto& line : out.lines) std::cout << line << "\n";
  }
  return out.code;
}
