#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgg/graph.hpp"
#include "mgg/morphism.hpp"
#include "mgg/rules.hpp"

namespace mgg {

// The negative part is implicit: N^E lives on L's nodes, so checking it
// under mL is the whole of m_N.
struct Match {
  Morphism mL;  // L slot id -> host id
  bool operator==(const Match&) const = default;
  auto operator<=>(const Match&) const = default;
};

struct DerivationResult {
  TypedDigraph H;
  Match used;
  std::optional<Production> epsilon;
  Morphism comatch;  // R slot id -> host id
};

// Matches of p in g. fixed pins some L slots to host ids.
std::vector<Match> find_matches(const Production& p, const TypedDigraph& g,
                                const Morphism& fixed = {});
// Host edges that would dangle: incident to the image of a deleted node,
// other end outside the image of L.
std::vector<EdgeIds> dangling_edges(const Production& p, const Match& m, const TypedDigraph& g);

// Throws DanglingError if dangling_edges is nonempty. Deleted slots keep
// their id with presence 0; new nodes get the slot id, or id#k if taken.
DerivationResult direct_derive(const Production& p, const Match& m, const TypedDigraph& g);
// Deletes the dangling edges first with a synthesized rule, then applies p.
DerivationResult derive_with_epsilon(const Production& p, const Match& m, const TypedDigraph& g);

// The rule deleting exactly the given host edges, written over host ids.
Production epsilon_rule(const TypedDigraph& g, const std::vector<EdgeIds>& edges);

// ---- sequences of rules ----

enum class Role { Plain, Identity, ConjAdd, ConjDel, Domain };

struct SlotRef {
  std::size_t rule = 0;
  std::string slot;
  bool operator==(const SlotRef&) const = default;
};

struct Link {
  enum class Kind { Same, Differ, Anchor } kind = Kind::Same;
  SlotRef a, b;      // b unused for Anchor
  std::string host;  // Anchor only
  bool operator==(const Link&) const = default;
};

// Written order: rules[0] is applied last, rules.back() first.
struct RuleSequence {
  std::vector<Production> rules;
  std::vector<Role> roles;
  std::vector<Link> links;
  std::vector<std::string> tags;

  std::size_t size() const { return rules.size(); }
  std::size_t add(Production p, Role r = Role::Plain);
  void same(SlotRef a, SlotRef b) { links.push_back({Link::Kind::Same, a, b, {}}); }
  void differ(SlotRef a, SlotRef b) { links.push_back({Link::Kind::Differ, a, b, {}}); }
  void anchor(SlotRef a, const std::string& host) {
    links.push_back({Link::Kind::Anchor, a, {}, host});
  }
  // Throws CompletionError if a link names a missing rule or slot.
  void validate() const;
  std::string str() const;
};

inline const std::string kMarkType = "__mark__";

// Replaces every Same link by a mark node: the rule applied first adds it
// with an edge to the marked node, the later one needs it and deletes it.
RuleSequence mark(const RuleSequence& s);

}  // namespace mgg
