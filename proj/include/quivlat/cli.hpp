#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quivlat/io.hpp"
#include "quivlat/quivlat.hpp"
#include "quivlat/verify.hpp"

namespace quivlat::cli {

using io::json;

struct Options {
  std::string quiver, rep, rep_x, rep_y, ring, dims, format = "text", word, suite;
  std::optional<std::size_t> bound;
  long prime = 2;
  std::uint64_t seed = 0;
  std::size_t size = 20;
  bool right = false;
};

inline std::size_t default_bound() {
  if (const char* env = std::getenv("QUIVLAT_BOUND")) {
    std::string s(env);
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return std::stoul(s);
    fail(ErrorKind::ParseError, "QUIVLAT_BOUND must be a nonnegative integer");
  }
  return 60;
}

class Session {
 public:
  Session(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int dispatch(const std::string& verb) {
    if (verb == "ext" || verb == "hom") return homology();
    if (verb == "rigid" || verb == "exceptional") return single_check(verb);
    if (verb == "mutate") return mutate();
    if (verb == "braid") return braid();
    if (verb == "schur") return schur();
    if (verb == "construct") return construct();
    if (verb == "decompose") return decompose();
    if (verb == "lift") return lift();
    if (verb == "basechange") return basechange();
    if (verb == "verify") return run_verify();
    fail(ErrorKind::ParseError, "unknown verb " + verb);
  }

 private:
  bool json_out() const { return o_.format == "json"; }
  std::size_t bound() const { return o_.bound ? *o_.bound : default_bound(); }

  std::optional<Ring> ring_override() const {
    if (o_.ring.empty()) return std::nullopt;
    return Ring::parse(o_.ring);
  }

  std::optional<Quiver> quiver_opt() const {
    if (o_.quiver.empty()) return std::nullopt;
    return io::quiver_from_json(io::read_json_file(o_.quiver));
  }

  Quiver quiver_required() const {
    auto q = quiver_opt();
    if (!q) fail(ErrorKind::ParseError, "--quiver is required");
    return *q;
  }

  Rep load(const std::string& path, const char* flag) const {
    if (path.empty()) fail(ErrorKind::ParseError, std::string(flag) + " is required");
    return io::rep_from_json(io::read_json_file(path), ring_override(), quiver_opt());
  }

  DimVector dims_required(const Quiver& q) const {
    if (o_.dims.empty()) fail(ErrorKind::ParseError, "--dims is required");
    DimVector d = io::parse_dims(o_.dims);
    if (d.size() != q.vertex_count()) fail(ErrorKind::DimensionMismatch, "--dims length differs from vertex count");
    return d;
  }

  int emit(json j, const std::string& text) {
    if (json_out()) {
      json out = {{"schema", 1}};
      for (auto& [k, v] : j.items()) out[k] = v;
      out_ << out.dump(2) << "\n";
    } else {
      out_ << text;
    }
    return 0;
  }

  static std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
  }

  static std::string module_text(const ModulePresentation& p) {
    if (p.is_zero()) return "0";
    std::vector<std::string> parts;
    for (const auto& d : p.invariant_factors)
      parts.push_back(p.ring.is_zero(d) ? p.ring.spec() : p.ring.spec() + "/(" + p.ring.format(d) + ")");
    std::string s;
    for (const auto& x : parts) s += (s.empty() ? "" : " + ") + x;
    return s;
  }

  static json rank_json(const std::optional<std::size_t>& r) { return r ? json(*r) : json(nullptr); }

  static std::string rep_text(const Rep& x) {
    std::string s = "ring " + x.ring().spec() + ", dims " + x.dims().to_string() + "\n";
    for (std::size_t a = 0; a < x.mats().size(); ++a) {
      const auto& ar = x.quiver().arrow(a);
      s += "  arrow " + std::to_string(a + 1) + " (" + std::to_string(ar.tail + 1) + "->" +
           std::to_string(ar.head + 1) + "): " + x.mat(a).to_string() + "\n";
    }
    return s;
  }

  int homology() {
    Rep x = load(o_.rep_x, "--rep-x");
    Rep y = load(o_.rep_y, "--rep-y");
    HomExtResult r = hom_ext(x, y);
    const bool rigid = is_rigid(x) && is_rigid(y);
    const bool exceptional = is_exceptional(x) && is_exceptional(y);
    json j = {{"homInvariants", r.hom.invariant_strings()}, {"extInvariants", r.ext.invariant_strings()},
              {"homRank", rank_json(r.hom_rank())}, {"extRank", rank_json(r.ext_rank())},
              {"rigid", rigid}, {"exceptional", exceptional}};
    std::string text = "Hom = " + module_text(r.hom) + "\nExt = " + module_text(r.ext) + "\nrigid: " +
                       (rigid ? "true" : "false") + "\nexceptional: " + (exceptional ? "true" : "false") + "\n";
    return emit(j, text);
  }

  int single_check(const std::string& verb) {
    Rep x = load(o_.rep, "--rep");
    HomExtResult r = hom_ext(x, x);
    bool value = verb == "rigid" ? r.ext.is_zero() : is_exceptional(x);
    json j = {{verb, value}, {"homInvariants", r.hom.invariant_strings()}, {"extInvariants", r.ext.invariant_strings()}};
    return emit(j, std::string(value ? "true" : "false") + "\n");
  }

  int mutate() {
    Rep x = load(o_.rep_x, "--rep-x");
    Rep y = load(o_.rep_y, "--rep-y");
    MutationResult m = o_.right ? right_mutate(x, y) : left_mutate(x, y);
    json j = {{"direction", o_.right ? "right" : "left"}, {"case", mutation_case_name(m.mutation_case)},
              {"dims", io::dims_to_json(m.result.dims())}, {"result", io::rep_to_json(m.result)}};
    return emit(j, std::string(o_.right ? "R" : "L") + " mutation, case " + mutation_case_name(m.mutation_case) +
                       "\n" + rep_text(m.result));
  }

  static std::vector<BraidStep> parse_word(const std::string& w) {
    std::vector<BraidStep> steps;
    std::stringstream in(w);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      const bool inv = tok.size() > 2 && tok.ends_with("-1");
      const std::string digits = tok.size() > 1 ? tok.substr(1, tok.size() - 1 - (inv ? 2 : 0)) : "";
      if (tok.empty() || tok[0] != 's' || digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        fail(ErrorKind::ParseError, "bad braid generator '" + tok + "' (expected s<i> or s<i>-1)");
      steps.push_back({std::stoul(digits), inv});
    }
    return steps;
  }

  static json sequence_dims(const ExcSequence& s) {
    json d = json::array();
    for (const auto& v : s.dims()) d.push_back(io::dims_to_json(v));
    return d;
  }

  static std::string sequence_text(const ExcSequence& s) {
    std::string t;
    for (const auto& v : s.dims()) t += (t.empty() ? "" : " ") + v.to_string();
    return t;
  }

  int braid() {
    Quiver q = quiver_required();
    Ring ring = o_.ring.empty() ? Ring::integers() : Ring::parse(o_.ring);
    ExcSequence s = standard_sequence(q, ring);
    json trace = json::array();
    std::string text = "start: " + sequence_text(s) + "\n";
    for (const auto& step : parse_word(o_.word)) {
      s = braid_act(s, step);
      trace.push_back({{"generator", step.name()}, {"dims", sequence_dims(s)}});
      text += step.name() + ": " + sequence_text(s) + "\n";
    }
    json items = json::array();
    for (const auto& x : s.items()) items.push_back(io::rep_to_json(x));
    return emit({{"start", sequence_dims(standard_sequence(q, ring))}, {"trace", trace}, {"items", items}}, text);
  }

  int schur() {
    Quiver q = quiver_required();
    DimVector d = dims_required(q);
    SchurVerdict v = schur_verdict(q, d, bound());
    if (v == SchurVerdict::PrefilterFalse)
      fail(ErrorKind::NotSchurRoot, d.to_string() + " has Euler form " + std::to_string(euler_form(q, d, d)) + ", not 1");
    if (v == SchurVerdict::BoundedFalse)
      fail(ErrorKind::BoundExceeded, "no exceptional rep of dims " + d.to_string() + " within bound " +
                                         std::to_string(bound()));
    return emit({{"dims", io::dims_to_json(d)}, {"realSchurRoot", true}}, "true\n");
  }

  int construct() {
    Quiver q = quiver_required();
    DimVector d = dims_required(q);
    Ring ring = o_.ring.empty() ? Ring::integers() : Ring::parse(o_.ring);
    Rep x = exceptional_lattice(q, d, ring, bound());
    return emit({{"rep", io::rep_to_json(x)}}, rep_text(x));
  }

  int decompose() {
    Rep x = load(o_.rep, "--rep");
    RigidDecomposition d = decompose_rigid(x, o_.prime, bound());
    auto ms = d.multiset();
    json summands = json::array();
    std::string text;
    for (const auto& [dims, m] : ms) {
      summands.push_back({{"dims", io::dims_to_json(dims)}, {"multiplicity", m}});
      text += dims.to_string() + " x " + std::to_string(m) + "\n";
    }
    json ordering = json::array();
    for (const auto& s : d.summands) {
      auto it = std::find(ms.begin(), ms.end(), std::make_pair(s.rep.dims(), s.multiplicity));
      ordering.push_back(it - ms.begin());
    }
    text += std::string("verified: ") + (d.verified ? "true" : "false") + "\n";
    return emit({{"summands", summands}, {"ordering", ordering}, {"verified", d.verified}}, text);
  }

  int lift() {
    if (o_.ring.empty()) fail(ErrorKind::ParseError, "--ring (the ring to lift to) is required");
    if (o_.rep.empty()) fail_missing("--rep");
    Rep x = io::rep_from_json(io::read_json_file(o_.rep), std::nullopt, quiver_opt());
    Ring source = Ring::parse(o_.ring);
    Rep l = lift_rigid(x, RingHom::canonical(source, x.ring()));
    return emit({{"rep", io::rep_to_json(l)}}, rep_text(l));
  }

  [[noreturn]] static void fail_missing(const char* flag) {
    fail(ErrorKind::ParseError, std::string(flag) + " is required");
  }

  int basechange() {
    if (o_.ring.empty()) fail(ErrorKind::ParseError, "--ring (the target ring) is required");
    Ring target = Ring::parse(o_.ring);
    auto read = [&](const std::string& path, const char* flag) {
      if (path.empty()) fail_missing(flag);
      return io::rep_from_json(io::read_json_file(path), std::nullopt, quiver_opt());
    };
    if (!o_.rep.empty()) {
      Rep x = read(o_.rep, "--rep");
      Rep y = base_change(x, RingHom::canonical(x.ring(), target));
      return emit({{"rep", io::rep_to_json(y)}}, rep_text(y));
    }
    Rep x = read(o_.rep_x, "--rep-x");
    Rep y = read(o_.rep_y, "--rep-y");
    RingHom h = RingHom::canonical(x.ring(), target);
    HomExtResult src = hom_ext(x, y);
    HomExtResult dst = hom_ext(base_change(x, h), base_change(y, h));
    std::vector<std::string> tensored;
    for (const auto& d : base_changed_invariants(src.ext, h)) tensored.push_back(target.format(d));
    bool agrees = tensored == dst.ext.invariant_strings();
    return emit({{"hom", h.describe()}, {"extTensored", tensored}, {"extAfterBaseChange", dst.ext.invariant_strings()},
                 {"agrees", agrees}},
                "Ext (x) S: [" + join(tensored) + "]\nExt over S: [" + join(dst.ext.invariant_strings()) +
                    "]\nagrees: " + (agrees ? "true" : "false") + "\n");
  }

  int run_verify() {
    verify::SuiteReport r = verify::run_suite(o_.suite, o_.seed, o_.size);
    json j = {{"suite", r.suite}, {"seed", o_.seed}, {"size", o_.size}, {"cases", r.cases},
              {"passed", r.passed}, {"failed", r.failed()}, {"firstCounterexample", r.first_counterexample}};
    std::string text = r.suite + ": " + std::to_string(r.passed) + "/" + std::to_string(r.cases) + " passed\n";
    if (!r.first_counterexample.empty()) text += "first counterexample: " + r.first_counterexample + "\n";
    return emit(j, text);
  }

  const Options& o_;
  std::ostream& out_;
};

/// Runs `quivlat <verb> [flags]`; args excludes the program name. Returns the
/// exit code: 0 success, 1 domain error, 2 parse error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hom, Ext, mutations and decompositions of quiver representations over exact rings", "quivlat"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--quiver", o.quiver, "quiver JSON file");
    sub->add_option("--ring", o.ring, "ring spec: Z, Q, F:p, Zmod:m, Feps:p:n");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--bound", o.bound, "cap on the total dimension of explored reps (default 60)");
    sub->add_option("--prime", o.prime, "auxiliary prime for decompositions (default 2)");
    sub->add_option("--seed", o.seed, "seed for randomized suites (default 0)");
  };
  struct Verb {
    const char* name;
    const char* help;
  };
  const Verb verbs[] = {
      {"ext", "Hom and Ext of a pair"}, {"hom", "Hom and Ext of a pair"},
      {"rigid", "whether Ext(X,X) = 0"}, {"exceptional", "whether X is exceptional"},
      {"mutate", "left (or --right) mutation of an exceptional pair"},
      {"braid", "apply a braid word to the standard sequence"},
      {"schur", "real Schur root test"}, {"construct", "exceptional lattice of given dims"},
      {"decompose", "decompose a rigid lattice"}, {"lift", "lift a rigid rep along a nilpotent-kernel quotient"},
      {"basechange", "base change a rep, or compare Ext before and after"},
      {"verify", "run a property suite"},
  };
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    add_common(sub);
    const std::string name = v.name;
    if (name == "ext" || name == "hom" || name == "mutate" || name == "basechange") {
      sub->add_option("--rep-x", o.rep_x, "first rep JSON file");
      sub->add_option("--rep-y", o.rep_y, "second rep JSON file");
    }
    if (name == "rigid" || name == "exceptional" || name == "decompose" || name == "lift" || name == "basechange")
      sub->add_option("--rep", o.rep, "rep JSON file");
    if (name == "schur" || name == "construct") sub->add_option("--dims", o.dims, "dimension vector, e.g. 1,2");
    if (name == "mutate") sub->add_flag("--right", o.right, "right mutation R_Y X instead of L_X Y");
    if (name == "braid") sub->add_option("--word", o.word, "generators such as s1,s2-1");
    if (name == "verify") {
      sub->add_option("suite", o.suite, "euler, basechange, braid, theoremA, theoremB or theoremC")
          ->required()
          ->check(CLI::IsMember(verify::suite_names()));
      sub->add_option("--size", o.size, "number of cases (default 20)");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    Session s(o, out);
    return s.dispatch(verb);
  } catch (const Error& e) {
    const bool parse = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::FileNotFound;
    if (o.format == "json")
      out << json{{"schema", 1}, {"error", std::string(e.name())}, {"message", e.detail()}}.dump(2) << "\n";
    else
      err << "error: " << e.name() << ": " << e.detail() << "\n";
    return parse ? 2 : 1;
  }
}

}  // namespace quivlat::cli
