// Command-line front end. Exit codes: 0 success, 1 property fails, 2 input error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "mgg/errors.hpp"
#include "mgg/io.hpp"
#include "mgg/oracle.hpp"

using namespace mgg;

namespace {

struct Options {
  std::string grammar;
  bool json = false;
};

constexpr int kOk = 0, kFails = 1, kInput = 2;

GrammarFile grammar_of(const Options& o) {
  if (o.grammar.empty()) return {};
  GrammarFile f = load_grammar(o.grammar);
  return f;
}

// A graph name from the grammar, else a path to a graph file.
TypedDigraph host_of(const GrammarFile& f, const std::string& arg) {
  if (f.graphs.count(arg)) return f.graphs.at(arg);
  if (std::filesystem::exists(arg)) return load_graph(arg);
  throw InputError("'" + arg + "' is neither a graph in the grammar nor a readable file");
}

std::string matrix_text(const BoolMatrix& m) {
  std::ostringstream o;
  o << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    o << (i ? "," : "") << "[";
    for (std::size_t k = 0; k < m.cols(); ++k) o << (k ? "," : "") << (m.get(i, k) ? 1 : 0);
    o << "]";
  }
  o << "]";
  return o.str();
}

std::string slot_list(const Production& p) {
  std::string s;
  for (const auto& n : p.slots()) s += (s.empty() ? "" : " ") + n.id + ":" + n.type;
  return s;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_validate(const Options& o) {
  GrammarFile f = grammar_of(o);
  f.validate();
  for (const auto& [name, c] : f.constraints)
    if (!check_commuting(c.diagram)) throw InputError("constraint '" + name + "' does not commute");
  if (o.json)
    print_json({{"valid", true},
                {"graphs", f.graphs.size()},
                {"rules", f.rules.size()},
                {"constraints", f.constraints.size()},
                {"acs", f.acs.size()},
                {"sequences", f.sequences.size()}});
  else
    std::cout << "valid: " << f.graphs.size() << " graphs, " << f.rules.size() << " rules, "
              << f.constraints.size() << " constraints, " << f.acs.size() << " conditions, "
              << f.sequences.size() << " sequences\n";
  return kOk;
}

int cmd_match(const Options& o, const std::string& rule, const std::string& host) {
  GrammarFile f = grammar_of(o);
  Production p = f.rule(rule);
  auto ms = find_matches(p, host_of(f, host));
  if (o.json) {
    Json arr = Json::array();
    for (const auto& m : ms) arr.push_back(morphism_to_json(m.mL));
    print_json({{"rule", rule}, {"matches", arr}});
  } else {
    std::cout << ms.size() << " match" << (ms.size() == 1 ? "" : "es") << "\n";
    for (const auto& m : ms) std::cout << "  " << m.mL.str() << "\n";
  }
  return ms.empty() ? kFails : kOk;
}

int cmd_apply(const Options& o, const std::string& rule, const std::string& host, bool strict,
              std::size_t index) {
  GrammarFile f = grammar_of(o);
  Production p = f.rule(rule);
  TypedDigraph g = host_of(f, host);
  auto ms = find_matches(p, g);
  if (index >= ms.size()) {
    std::cout << "not applicable: " << ms.size() << " match" << (ms.size() == 1 ? "" : "es")
              << "\n";
    return kFails;
  }
  DerivationResult r;
  try {
    r = strict ? direct_derive(p, ms[index], g) : derive_with_epsilon(p, ms[index], g);
  } catch (const DanglingError& e) {
    if (o.json) {
      Json arr = Json::array();
      for (const auto& [a, b] : e.edges) arr.push_back({a, b});
      print_json({{"applied", false}, {"dangling", arr}});
    } else {
      std::cout << "not applicable: " << e.what() << "\n";
    }
    return kFails;
  }
  TypedDigraph h = r.H.compacted();
  if (o.json) {
    Json j{{"applied", true}, {"match", morphism_to_json(r.used.mL)}, {"result", graph_to_json(h)}};
    if (r.epsilon) j["epsilon_deletes"] = graph_to_json(r.epsilon->lhs())["edges"];
    print_json(j);
  } else {
    std::cout << "match " << r.used.mL.str() << "\n";
    if (r.epsilon && r.epsilon->lhs().edge_count())
      std::cout << "epsilon deletes " << r.epsilon->lhs().edge_count() << " dangling edge(s)\n";
    std::cout << graph_to_json(h).dump() << "\n";
  }
  return kOk;
}

int cmd_nihilation(const Options& o, const std::string& rule) {
  GrammarFile f = grammar_of(o);
  Production p = f.rule(rule);
  BoolMatrix d = dbar(p);
  if (o.json) {
    Json slots = Json::array();
    for (const auto& n : p.slots()) slots.push_back({{"id", n.id}, {"type", n.type}});
    print_json({{"slots", slots}, {"NE", matrix_to_json(p.NE)}, {"Dbar", matrix_to_json(d)}});
  } else {
    std::cout << "slots: " << slot_list(p) << "\n";
    std::cout << "NE = " << matrix_text(p.NE) << "\n";
    std::cout << "Dbar = " << matrix_text(d) << "\n";
  }
  return kOk;
}

Json env_to_json(const Env& env) {
  Json j = Json::object();
  for (const auto& [var, m] : env) j[var] = morphism_to_json(m);
  return j;
}

int cmd_check(const Options& o, const std::string& name, const std::string& host, bool oracle) {
  GrammarFile f = grammar_of(o);
  TypedDigraph g = host_of(f, host);
  bool ok = false, oracle_ok = false;
  Json j{{"name", name}};
  std::string census;
  if (f.acs.count(name)) {
    AppCondition ac = f.ac(name);
    ok = conditioned_applicable(ac, g);
    if (oracle) oracle_ok = oracle_conditioned(ac, g);
    Json per = Json::array();
    for (const auto& m : find_matches(ac.rule, g)) {
      bool s = satisfies_ac(g, m.mL, ac);
      per.push_back({{"match", morphism_to_json(m.mL)}, {"satisfied", s}});
    }
    j["matches"] = per;
  } else {
    auto it = f.constraints.find(name);
    if (it == f.constraints.end()) throw InputError("no constraint or condition named '" + name + "'");
    const GraphConstraint& gc = it->second;
    gc.validate();
    SatResult r = satisfies(g, gc);
    ok = r.ok;
    if (oracle) oracle_ok = oracle_satisfies(g, gc);
    j["witness"] = env_to_json(r.witness);
    if (gc.formula.kind == Formula::Kind::Quant) {
      auto [good, total] = outer_census(g, gc);
      census = std::to_string(good) + " of " + std::to_string(total) + " potential occurrences total";
      j["census"] = {{"satisfying", good}, {"total", total}};
    }
  }
  j["satisfied"] = ok;
  if (oracle) j["oracle"] = oracle_ok;
  if (o.json) {
    print_json(j);
  } else {
    std::cout << (ok ? "satisfied" : "not satisfied");
    if (!census.empty()) std::cout << ": " << census;
    std::cout << "\n";
    if (j.contains("witness") && ok)
      for (const auto& [var, m] : j["witness"].items()) std::cout << "  " << var << " " << m.dump() << "\n";
    if (j.contains("matches"))
      for (const auto& m : j["matches"])
        std::cout << "  match " << m["match"].dump() << (m["satisfied"].get<bool>() ? " satisfies" : " fails")
                  << "\n";
    if (oracle) std::cout << "oracle: " << (oracle_ok ? "satisfied" : "not satisfied") << "\n";
  }
  if (oracle && oracle_ok != ok) {
    std::cerr << "engine and oracle disagree\n";
    return kFails;
  }
  return ok ? kOk : kFails;
}

SequenceSet compile_named(const GrammarFile& f, const std::string& name, const TypedDigraph& g) {
  if (f.acs.count(name)) return compile_ac(f.ac(name), g);
  auto it = f.constraints.find(name);
  if (it == f.constraints.end()) throw InputError("no constraint or condition named '" + name + "'");
  it->second.validate();
  return compile_gc(it->second, g);
}

int cmd_compile(const Options& o, const std::string& name, const std::string& host) {
  GrammarFile f = grammar_of(o);
  TypedDigraph g = host_of(f, host);
  SequenceSet set = compile_named(f, name, g);
  ApplyResult r = applicable(set, g);
  if (o.json) {
    Json arr = Json::array();
    for (const auto& s : set.alternatives) arr.push_back(sequence_to_json(s));
    Json j{{"name", name}, {"sequences", arr}, {"applicable", r.ok}};
    if (r.ok) j["applied"] = r.alternative;
    print_json(j);
  } else {
    std::cout << set.size() << " sequence" << (set.size() == 1 ? "" : "s") << "\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
      const auto& s = set.alternatives[i];
      std::cout << "  [" << i << "] " << s.str();
      if (!s.tags.empty()) {
        std::cout << "  {";
        for (std::size_t k = 0; k < s.tags.size(); ++k) std::cout << (k ? ", " : "") << s.tags[k];
        std::cout << "}";
      }
      std::cout << "\n";
    }
    if (r.ok)
      std::cout << "applicable via [" << r.alternative << "]\n";
    else
      std::cout << "none applicable\n";
  }
  return kOk;
}

void print_report(const SequenceReport& r, const std::string& indent) {
  std::cout << indent << "coherent " << (r.coherent ? "yes" : "no") << ", compatible "
            << (r.compatible ? "yes" : "no") << "\n";
  for (const auto& c : r.conflicts) {
    std::cout << indent << conflict_name(c.kind) << " conflict at rule " << c.rule << ": ";
    if (c.is_edge)
      std::cout << "edge (" << c.src << ":" << c.src_type << ", " << c.dst << ":" << c.dst_type << ")\n";
    else
      std::cout << "node " << c.src << ":" << c.src_type << "\n";
  }
  std::cout << indent << "MID " << graph_to_json(r.mid).dump() << "\n";
  std::cout << indent << "NID " << graph_to_json(r.nid).dump() << "\n";
}

int cmd_analyze(const Options& o, const std::string& name, const std::string& host) {
  GrammarFile f = grammar_of(o);
  if (f.sequences.count(name)) {
    SequenceReport r = analyze(f.sequence(name));
    if (o.json)
      print_json(report_to_json(r));
    else
      print_report(r, "");
    return r.coherent && r.compatible ? kOk : kFails;
  }
  if (host.empty()) throw InputError("analyzing a condition or constraint needs a host graph");
  TypedDigraph g = host_of(f, host);
  AcReport rep;
  if (f.acs.count(name)) {
    rep = check_ac_properties(f.ac(name), g);
  } else {
    auto it = f.constraints.find(name);
    if (it == f.constraints.end()) throw InputError("nothing named '" + name + "' to analyze");
    it->second.validate();
    rep = check_gc_properties(it->second, g);
  }
  if (o.json) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < rep.reports.size(); ++i) {
      Json x = report_to_json(rep.reports[i]);
      x["sequence"] = rep.sequences.alternatives[i].str();
      x["tags"] = rep.sequences.alternatives[i].tags;
      arr.push_back(std::move(x));
    }
    print_json({{"coherent", rep.coherent},
                {"compatible", rep.compatible},
                {"consistent", rep.consistent},
                {"sequences", arr}});
  } else {
    std::cout << "coherent " << (rep.coherent ? "yes" : "no") << ", compatible "
              << (rep.compatible ? "yes" : "no") << ", consistent " << (rep.consistent ? "yes" : "no")
              << "\n";
    for (std::size_t i = 0; i < rep.reports.size(); ++i) {
      std::cout << "[" << i << "] " << rep.sequences.alternatives[i].str() << "\n";
      print_report(rep.reports[i], "    ");
    }
  }
  return rep.consistent ? kOk : kFails;
}

int cmd_export_dot(const Options& o, const std::string& name) {
  GrammarFile f = grammar_of(o);
  if (name.empty()) {
    for (const auto& [n, g] : f.graphs) std::cout << to_dot(g, n);
    for (const auto& [n, r] : f.rules) std::cout << rule_to_dot(f.rule(n));
  } else if (f.rules.count(name)) {
    std::cout << rule_to_dot(f.rule(name));
  } else if (f.graphs.count(name)) {
    std::cout << to_dot(f.graphs.at(name), name);
  } else if (f.constraints.count(name)) {
    for (const auto& [var, g] : f.constraints.at(name).diagram.graphs) std::cout << to_dot(g, var);
  } else {
    std::cout << to_dot(load_graph(name), std::filesystem::path(name).stem().string());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix graph grammar engine"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-g,--grammar", o.grammar, "grammar file (JSON)");
  app.add_flag("--json", o.json, "machine-readable report");

  std::string a1, a2;
  bool strict = false, oracle = false;
  std::size_t index = 0;

  auto* validate = app.add_subcommand("validate", "check the grammar file");
  auto* match = app.add_subcommand("match", "list the matches of a rule");
  match->add_option("rule", a1)->required();
  match->add_option("host", a2)->required();
  auto* apply = app.add_subcommand("apply", "apply a rule at a match");
  apply->add_option("rule", a1)->required();
  apply->add_option("host", a2)->required();
  apply->add_flag("--strict", strict, "fail on dangling edges instead of deleting them");
  apply->add_option("--match", index, "index into the match list");
  auto* nihil = app.add_subcommand("nihilation", "print the nihilation matrix");
  nihil->add_option("rule", a1)->required();
  auto* check = app.add_subcommand("check", "evaluate a constraint or condition");
  check->add_option("constraint", a1)->required();
  check->add_option("host", a2)->required();
  check->add_flag("--oracle", oracle, "cross-check with the brute-force evaluator");
  auto* compile = app.add_subcommand("compile-ac", "compile a condition into rule sequences");
  compile->add_option("condition", a1)->required();
  compile->add_option("host", a2)->required();
  auto* analyze_cmd = app.add_subcommand("analyze", "coherence, compatibility and consistency");
  analyze_cmd->add_option("name", a1)->required();
  analyze_cmd->add_option("host", a2);
  auto* dot = app.add_subcommand("export-dot", "write graphs and rules as DOT");
  dot->add_option("name", a1);

  for (auto* sub : {validate, match, apply, nihil, check, compile, analyze_cmd, dot}) {
    sub->add_option("-g,--grammar", o.grammar, "grammar file (JSON)");
    sub->add_flag("--json", o.json, "machine-readable report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*match) return cmd_match(o, a1, a2);
    if (*apply) return cmd_apply(o, a1, a2, strict, index);
    if (*nihil) return cmd_nihilation(o, a1);
    if (*check) return cmd_check(o, a1, a2, oracle);
    if (*compile) return cmd_compile(o, a1, a2);
    if (*analyze_cmd) return cmd_analyze(o, a1, a2);
    if (*dot) return cmd_export_dot(o, a1);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
