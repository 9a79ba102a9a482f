#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mgg/constraints.hpp"
#include "mgg/derivation.hpp"

namespace mgg {

struct SequenceSet {
  std::vector<RuleSequence> alternatives;
  std::size_t size() const { return alternatives.size(); }
  bool empty() const { return alternatives.empty(); }
};

inline constexpr std::size_t kDefaultSequenceBudget = 4096;

// del;add over the nodes of a whose type occurs in census (A^V_R). The
// pair applies iff the edges of a among those nodes are all absent.
// Throws OperatorError if a has no edge.
RuleSequence conj_id_rule(const TypedDigraph& a, const std::map<std::string, std::size_t>& census,
                          const std::string& name = "A");

// d : L -> A in every compiler below.
// exists A [A]: p;id_A
RuleSequence compile_match(const Production& p, const TypedDigraph& a, const Morphism& d);
// exists A [!A]: one p;del;add per edge of A
SequenceSet compile_decomp(const Production& p, const TypedDigraph& a, const Morphism& d,
                           const TypedDigraph& g);
// forall A [A] and nexists A [A] are host relative, so each match of p gets
// its own sequences with p anchored there.
SequenceSet compile_closure(const Production& p, const TypedDigraph& a, const Morphism& d,
                            const TypedDigraph& g);
SequenceSet compile_nac(const Production& p, const TypedDigraph& a, const Morphism& d,
                        const TypedDigraph& g);

// Reduces the condition on g for every match of the rule, then emits one
// sequence per disjunct of the reduced body. Throws BudgetError when a
// match yields more than budget disjuncts. An empty set is never applicable.
SequenceSet compile_ac(const AppCondition& ac, const TypedDigraph& g,
                       std::size_t budget = kDefaultSequenceBudget);
SequenceSet compile_gc(const GraphConstraint& gc, const TypedDigraph& g,
                       std::size_t budget = kDefaultSequenceBudget);

struct AppliedStep {
  std::size_t rule = 0;
  Match match;
};

struct ApplyResult {
  bool ok = false;
  std::size_t alternative = 0;     // SequenceSet only
  std::vector<AppliedStep> trace;  // in application order
  TypedDigraph result;
};

// strict: a dangling edge blocks a step instead of being deleted first.
ApplyResult applicable(const RuleSequence& s, const TypedDigraph& g, bool strict = false);
ApplyResult applicable(const SequenceSet& s, const TypedDigraph& g, bool strict = false);

struct Conflict {
  enum class Kind { Coherence, Dangling, Identity } kind = Kind::Coherence;
  std::size_t rule = 0;
  bool is_edge = true;
  std::string src, dst;            // dst empty for a node
  std::string src_type, dst_type;
};

const char* conflict_name(Conflict::Kind k);

struct SequenceReport {
  bool coherent = true;
  bool compatible = true;
  TypedDigraph mid;      // what the plain and identity rules need
  TypedDigraph nid;      // edges that must be absent, with their nodes
  TypedDigraph context;  // mid plus the nodes only the conjugate and domain rules need
  std::vector<Conflict> conflicts;
};

// Walks the sequence in application order tracking each element as
// unknown, present or absent. Throws CompletionError on a bad link.
SequenceReport analyze(const RuleSequence& s);

struct AcReport {
  bool coherent = false;
  bool compatible = false;
  bool consistent = false;
  SequenceSet sequences;
  std::vector<SequenceReport> reports;
};

// Coherent, compatible: some sequence is. Consistent: some sequence is
// both and applies strictly to its own context graph.
AcReport check_ac_properties(const AppCondition& ac, const TypedDigraph& g,
                             std::size_t budget = kDefaultSequenceBudget);
AcReport check_gc_properties(const GraphConstraint& gc, const TypedDigraph& g,
                             std::size_t budget = kDefaultSequenceBudget);

}  // namespace mgg
