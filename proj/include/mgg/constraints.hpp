#pragma once

#include <map>
#include <string>
#include <vector>

#include "mgg/formula.hpp"
#include "mgg/graph.hpp"
#include "mgg/matching.hpp"
#include "mgg/rules.hpp"

namespace mgg {

struct GraphConstraint {
  Diagram diagram;
  Formula formula;

  // Diagram morphisms valid and commuting, every variable declared.
  void validate() const;
  bool operator==(const GraphConstraint&) const = default;
};

// The rule's LHS is the diagram graph l_var; its nihilation graph is n_var
// and shares L's node ids. Both are bound by the match, so a leading
// "exists L" or "exists N" in the formula is redundant and dropped.
struct AppCondition {
  Production rule;
  GraphConstraint gc;
  std::string l_var = "L";
  std::string n_var = "N";
};

AppCondition make_ac(const Production& p, Diagram d, Formula f, const std::string& l_var = "L",
                     const std::string& n_var = "N");

// A binding maps the nodes of a graph whose type occurs in the host;
// nodes of other types stay unmapped.
using Binding = Morphism;
using Env = std::map<std::string, Binding>;

// Injective type-preserving maps of a's nodes with host-present types.
std::vector<Binding> domain(const TypedDigraph& a, const TypedDigraph& g);

bool eval_P(const TypedDigraph& a, const Binding& m, const TypedDigraph& g, Target t);
// Throws ShapeError unless a is connected with at least one edge.
bool eval_Q(const TypedDigraph& a, const Binding& m, const TypedDigraph& g, Target t);
// Related nodes share an image, unrelated nodes do not.
bool eval_PU(const TypedDigraph& a, const TypedDigraph& b, const Binding& ma, const Binding& mb,
             const Relation& rel);

bool connected_with_edge(const TypedDigraph& a);

// The relation a PU atom uses: explicit, else the diagram arrow between the
// two variables, else empty.
Relation pu_relation(const Diagram& d, const Formula& atom);

// m agrees with every bound neighbour of var along the diagram arrows.
bool consistent(const Diagram& d, const std::string& var, const Binding& m, const Env& env);

struct SatResult {
  bool ok = false;
  Env witness;  // existential bindings along the satisfying path
};

SatResult evaluate(const TypedDigraph& g, const Diagram& d, const Formula& f, const Env& env = {});
SatResult satisfies(const TypedDigraph& g, const GraphConstraint& gc);
// Throws MatchError if mL is not a total match of the LHS.
bool satisfies_ac(const TypedDigraph& g, const Morphism& mL, const AppCondition& ac);
// Some match of the rule satisfies the condition.
bool conditioned_applicable(const AppCondition& ac, const TypedDigraph& g);

// For an outermost quantifier: how many candidates satisfy its body, of how many.
std::pair<std::size_t, std::size_t> outer_census(const TypedDigraph& g, const GraphConstraint& gc);

}  // namespace mgg
