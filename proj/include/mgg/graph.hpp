#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/morphism.hpp"

namespace mgg {

struct Node {
  std::string id;
  std::string type;
  bool operator==(const Node&) const = default;
};

using EdgeIds = std::pair<std::string, std::string>;

// Simple digraph over an ordered list of typed slots. A slot whose presence
// bit is 0 is a completion artifact or a deleted node: it keeps its id and
// row/column, but it is not part of the graph.
class TypedDigraph {
 public:
  TypedDigraph() = default;
  TypedDigraph(std::vector<Node> nodes, BoolMatrix adj, BoolVector present);

  std::size_t add_node(const std::string& id, const std::string& type, bool present = true);
  void add_edge(const std::string& src, const std::string& dst);
  void remove_edge(const std::string& src, const std::string& dst);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  const BoolMatrix& adj() const { return adj_; }
  const BoolVector& present() const { return present_; }

  bool is_present(std::size_t i) const { return present_.get(i); }
  bool edge(std::size_t i, std::size_t j) const { return adj_.get(i, j); }
  bool has_edge(const std::string& src, const std::string& dst) const;
  void set_edge(std::size_t i, std::size_t j, bool v) { adj_.set(i, j, v); }
  void set_present(std::size_t i, bool v) { present_.set(i, v); }

  // -1 when there is no slot with that id.
  int index_of(const std::string& id) const;
  bool has_node(const std::string& id) const { return index_of(id) >= 0; }
  const std::string& type_of(const std::string& id) const;

  std::vector<Node> present_nodes() const;
  std::size_t node_count() const { return present_.count(); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<EdgeIds> edge_ids() const;
  std::size_t edge_count() const { return adj_.count(); }
  std::set<std::string> types() const;

  // Drops absent slots.
  TypedDigraph compacted() const;
  // Induced on the given ids, in the given order.
  TypedDigraph induced(const std::vector<std::string>& ids) const;

  std::string str() const;
  bool operator==(const TypedDigraph&) const = default;

 private:
  std::vector<Node> nodes_;
  BoolMatrix adj_;
  BoolVector present_;
};

// Negation of a graph. Deliberately not a TypedDigraph: it is in general
// not compatible and nothing downstream should treat it as one.
struct NegStructure {
  std::vector<Node> nodes;
  BoolMatrix adj;
  BoolVector present;
  std::shared_ptr<const TypedDigraph> origin;

  // Edge-level view used when matching into the negation: every slot is
  // usable and the edges are the negated ones.
  TypedDigraph as_target() const;
};

struct Compatibility {
  bool dangling = false;  // the norm of (M or M^t) x not(V)
  BoolVector offenders;
  bool compatible() const { return !dangling; }
};

Compatibility compatibility_check(const TypedDigraph& g);

// f : g1 -> g2. Identified slots come first (ordered by type then g1 id),
// then the rest of g1, then the rest of g2, each block ordered by type then
// id. A padded slot keeps its source id behind a "~1." or "~2." prefix.
std::pair<TypedDigraph, TypedDigraph> complete(const TypedDigraph& g1, const TypedDigraph& g2,
                                               const Morphism& f);

void check_morphism(const TypedDigraph& a, const TypedDigraph& b, const Morphism& f);

NegStructure negate(const TypedDigraph& g);

// f : a -> g
NegStructure complement_wrt(const TypedDigraph& g, const TypedDigraph& a, const Morphism& f);

// All nodes present.
TypedDigraph build_graph(const std::vector<Node>& nodes, const std::vector<EdgeIds>& edges);

inline const char* padded_prefix(int source) { return source == 1 ? "~1." : "~2."; }

}  // namespace mgg
