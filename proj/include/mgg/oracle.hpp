#pragma once

#include <vector>

#include "mgg/constraints.hpp"
#include "mgg/derivation.hpp"
#include "mgg/graph.hpp"

namespace mgg {

// Reference implementations by exhaustive enumeration, written straight
// from the definitions and sharing no search code with the engine.

struct OracleBudget {
  std::size_t max_nodes = 8;
  std::size_t max_seq_len = 6;
  // MGG_BUDGET="nodes" or "nodes,seqlen" overrides the defaults.
  static OracleBudget from_env();
};

enum class MorphKind { Tot, ParMax, Iso };

std::vector<Morphism> oracle_morphisms(const TypedDigraph& a, const TypedDigraph& g, MorphKind k,
                                       const OracleBudget& b = OracleBudget::from_env());
bool oracle_satisfies(const TypedDigraph& g, const GraphConstraint& gc,
                      const OracleBudget& b = OracleBudget::from_env());
// Some match of the rule whose N^E is absent satisfies the condition.
bool oracle_conditioned(const AppCondition& ac, const TypedDigraph& g,
                        const OracleBudget& b = OracleBudget::from_env());
// strict: a dangling edge blocks the step instead of being deleted.
bool oracle_applicable(const RuleSequence& s, const TypedDigraph& g, bool strict = false,
                       const OracleBudget& b = OracleBudget::from_env());
// Edges incident to deleted images whose other end lies outside the match.
std::vector<EdgeIds> oracle_dangling(const Production& p, const Morphism& mL,
                                     const TypedDigraph& g);

}  // namespace mgg
