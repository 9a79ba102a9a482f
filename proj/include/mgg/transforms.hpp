#pragma once

#include <map>
#include <string>
#include <vector>

#include "mgg/constraints.hpp"

namespace mgg {

struct ReductionStep {
  enum class Op { Closure, Decomposition, IdentityRewrite, Specialization } op;
  std::string var;
  std::size_t count = 0;
  bool operator==(const ReductionStep&) const = default;
};

const char* op_name(ReductionStep::Op op);

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  GraphConstraint result;
  // node count per type of the host the reduction was computed for
  std::map<std::string, std::size_t> census;
};

std::map<std::string, std::size_t> node_census(const TypedDigraph& g);

// Negation normal form: no implications, negation only on atoms, and the
// negated quantifiers turned into exists/forall.
Formula normalize(const Formula& f);

// Replaces the universal var by one anchored existential replica per
// candidate occurrence in g. Throws OperatorError if var is not universal
// after normalization.
GraphConstraint closure(const GraphConstraint& gc, const std::string& var, const TypedDigraph& g);
// Replaces every Q atom on var by a disjunction of P atoms on single-edge
// pieces of var. Throws ShapeError unless var is connected with an edge.
GraphConstraint decompose(const GraphConstraint& gc, const std::string& var);

// Equivalent on g, using only exists, P, PU and constants.
ReductionTrace reduce(const GraphConstraint& gc, const TypedDigraph& g);

// No universal or negated quantifiers, no Q atoms, no implications.
bool is_reduced(const Formula& f);

}  // namespace mgg
