#pragma once

#include <string>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/graph.hpp"
#include "mgg/morphism.hpp"

namespace mgg {

// A completed production. L and R share one slot list (same ids, same
// order); L's presence vector is L^V and R's is R^V. An identified slot
// carries the L id, an R-only slot its R id (primed on collision).
struct Production {
  std::string name;
  TypedDigraph L, R;
  BoolMatrix eE, rE, NE;
  BoolVector eV, rV;
  bool compatible = true;

  std::size_t size() const { return L.size(); }
  const std::vector<Node>& slots() const { return L.nodes(); }
  bool in_lhs(std::size_t i) const { return L.is_present(i); }
  bool in_rhs(std::size_t i) const { return R.is_present(i); }
  bool deletes(std::size_t i) const { return eV.get(i); }
  bool adds(std::size_t i) const { return rV.get(i); }

  // L (resp. R) without absent slots.
  TypedDigraph lhs() const { return L.compacted(); }
  TypedDigraph rhs() const { return R.compacted(); }
  // The graph (N^E, L^V).
  TypedDigraph nihilation_graph() const;

  bool operator==(const Production&) const = default;
};

// f : L -> R
Production from_static(const std::string& name, const TypedDigraph& L, const TypedDigraph& R,
                       const Morphism& f);
// slots with L^V given by lhs_present; R is computed as r or (not e and L).
Production from_dynamic(const std::string& name, const std::vector<Node>& slots,
                        const BoolMatrix& LE, const BoolVector& LV, const BoolMatrix& eE,
                        const BoolMatrix& rE, const BoolVector& eV, const BoolVector& rV);

// not(not(e^V) x not(e^V)^t), restricted to L^V slots
BoolMatrix dbar(const Production& p);
BoolMatrix nihilation(const Production& p);
Production inverse(const Production& p);
// e or D-bar; throws OperatorError if it differs from e or (not r and N).
BoolMatrix evolve_nihilation(const Production& p);

BoolMatrix apply_action(const Production& p, const BoolMatrix& x);
BoolVector apply_action(const Production& p, const BoolVector& x);

// The rule with L = R = a.
Production id_rule(const TypedDigraph& a, const std::string& name = "id");

}  // namespace mgg
