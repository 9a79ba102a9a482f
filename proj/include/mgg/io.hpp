#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgg/constraints.hpp"
#include "mgg/derivation.hpp"
#include "mgg/sequences.hpp"
#include "mgg/transforms.hpp"

namespace mgg {

using Json = nlohmann::ordered_json;

// lhs and rhs with the rule morphism. Shared ids of equal type are
// identified unless "map" says otherwise.
struct RuleSpec {
  TypedDigraph lhs, rhs;
  Morphism map;
  bool operator==(const RuleSpec&) const = default;
};

struct AcSpec {
  std::string rule, constraint;
  std::string l_var = "L", n_var = "N";
  bool operator==(const AcSpec&) const = default;
};

struct SeqSpec {
  std::vector<std::string> rules;  // written order
  std::vector<Link> links;
  bool operator==(const SeqSpec&) const = default;
};

struct GrammarFile {
  std::vector<std::string> types;
  std::map<std::string, TypedDigraph> graphs;
  std::map<std::string, RuleSpec> rules;
  std::map<std::string, GraphConstraint> constraints;
  std::map<std::string, AcSpec> acs;
  std::map<std::string, SeqSpec> sequences;

  Production rule(const std::string& name) const;
  AppCondition ac(const std::string& name) const;
  RuleSequence sequence(const std::string& name) const;
  const TypedDigraph& graph(const std::string& name) const;
  // References resolve, types are declared, graphs are compatible and
  // every constraint or condition is well formed. Throws on the first problem.
  void validate() const;

  bool operator==(const GrammarFile&) const = default;
};

TypedDigraph graph_from_json(const Json& j);
Json graph_to_json(const TypedDigraph& g);

GrammarFile grammar_from_json(const Json& j);
Json grammar_to_json(const GrammarFile& f);
// Throws InputError for unreadable or malformed files.
GrammarFile load_grammar(const std::string& path);
// A file holding one graph literal.
TypedDigraph load_graph(const std::string& path);

Json matrix_to_json(const BoolMatrix& m);
Json morphism_to_json(const Morphism& m);
Json sequence_to_json(const RuleSequence& s);
Json report_to_json(const SequenceReport& r);
Json trace_to_json(const ReductionTrace& t);

// N-graphs get dashed edges, mark nodes are diamonds.
std::string to_dot(const TypedDigraph& g, const std::string& name, bool negative = false);
std::string rule_to_dot(const Production& p);

}  // namespace mgg
