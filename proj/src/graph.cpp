#include "mgg/graph.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "mgg/errors.hpp"

namespace mgg {

// ---- Morphism ----

bool Morphism::injective() const {
  std::set<std::string> seen;
  for (const auto& [k, v] : nodes)
    if (!seen.insert(v).second) return false;
  return true;
}

Morphism Morphism::inverse() const {
  Morphism r;
  for (const auto& [k, v] : nodes) r.nodes[v] = k;
  return r;
}

Morphism Morphism::then(const Morphism& g) const {
  Morphism r;
  for (const auto& [k, v] : nodes)
    if (auto w = g(v)) r.nodes[k] = *w;
  return r;
}

std::string Morphism::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : nodes) {
    if (!first) s += ", ";
    first = false;
    s += k + "->" + v;
  }
  return s + "}";
}

// ---- TypedDigraph ----

TypedDigraph::TypedDigraph(std::vector<Node> nodes, BoolMatrix adj, BoolVector present)
    : nodes_(std::move(nodes)), adj_(std::move(adj)), present_(std::move(present)) {
  if (adj_.rows() != nodes_.size() || adj_.cols() != nodes_.size() ||
      present_.size() != nodes_.size())
    throw DimensionError("graph parts disagree on slot count");
  std::set<std::string> ids;
  for (const auto& n : nodes_)
    if (!ids.insert(n.id).second) throw InputError("duplicate node id '" + n.id + "'");
}

std::size_t TypedDigraph::add_node(const std::string& id, const std::string& type,
                                   bool present) {
  if (has_node(id)) throw InputError("duplicate node id '" + id + "'");
  std::size_t n = nodes_.size();
  BoolMatrix adj(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (adj_.get(i, j)) adj.set(i, j);
  BoolVector pv(n + 1);
  for (std::size_t i = 0; i < n; ++i) pv.set(i, present_.get(i));
  pv.set(n, present);
  nodes_.push_back({id, type});
  adj_ = std::move(adj);
  present_ = std::move(pv);
  return n;
}

void TypedDigraph::add_edge(const std::string& src, const std::string& dst) {
  int i = index_of(src), j = index_of(dst);
  if (i < 0 || j < 0) throw InputError("edge (" + src + "," + dst + ") names an unknown node");
  adj_.set(i, j);
}

void TypedDigraph::remove_edge(const std::string& src, const std::string& dst) {
  int i = index_of(src), j = index_of(dst);
  if (i < 0 || j < 0) throw InputError("edge (" + src + "," + dst + ") names an unknown node");
  adj_.set(i, j, false);
}

bool TypedDigraph::has_edge(const std::string& src, const std::string& dst) const {
  int i = index_of(src), j = index_of(dst);
  return i >= 0 && j >= 0 && adj_.get(i, j);
}

int TypedDigraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].id == id) return static_cast<int>(i);
  return -1;
}

const std::string& TypedDigraph::type_of(const std::string& id) const {
  int i = index_of(id);
  if (i < 0) throw InputError("unknown node '" + id + "'");
  return nodes_[i].type;
}

std::vector<Node> TypedDigraph::present_nodes() const {
  std::vector<Node> r;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (present_.get(i)) r.push_back(nodes_[i]);
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> TypedDigraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> r;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (std::size_t j = 0; j < nodes_.size(); ++j)
      if (adj_.get(i, j)) r.emplace_back(i, j);
  return r;
}

std::vector<EdgeIds> TypedDigraph::edge_ids() const {
  std::vector<EdgeIds> r;
  for (auto [i, j] : edges()) r.emplace_back(nodes_[i].id, nodes_[j].id);
  return r;
}

std::set<std::string> TypedDigraph::types() const {
  std::set<std::string> r;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (present_.get(i)) r.insert(nodes_[i].type);
  return r;
}

TypedDigraph TypedDigraph::compacted() const {
  std::vector<std::string> ids;
  for (const auto& n : present_nodes()) ids.push_back(n.id);
  return induced(ids);
}

TypedDigraph TypedDigraph::induced(const std::vector<std::string>& ids) const {
  std::vector<int> idx;
  std::vector<Node> ns;
  for (const auto& id : ids) {
    int i = index_of(id);
    if (i < 0) throw InputError("unknown node '" + id + "'");
    idx.push_back(i);
    ns.push_back(nodes_[i]);
  }
  BoolMatrix adj(ids.size(), ids.size());
  BoolVector pv(ids.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    pv.set(a, present_.get(idx[a]));
    for (std::size_t b = 0; b < idx.size(); ++b)
      if (adj_.get(idx[a], idx[b])) adj.set(a, b);
  }
  return TypedDigraph(std::move(ns), std::move(adj), std::move(pv));
}

std::string TypedDigraph::str() const {
  std::string s = "nodes[";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) s += ' ';
    s += nodes_[i].id + ":" + nodes_[i].type;
    if (!present_.get(i)) s += "(absent)";
  }
  s += "] edges[";
  bool first = true;
  for (const auto& [a, b] : edge_ids()) {
    if (!first) s += ' ';
    first = false;
    s += a + "->" + b;
  }
  return s + "]";
}

TypedDigraph build_graph(const std::vector<Node>& nodes, const std::vector<EdgeIds>& edges) {
  TypedDigraph g(nodes, BoolMatrix(nodes.size(), nodes.size()), BoolVector(nodes.size(), true));
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

// ---- NegStructure ----

TypedDigraph NegStructure::as_target() const {
  return TypedDigraph(nodes, adj, BoolVector(nodes.size(), true));
}

// ---- operations ----

Compatibility compatibility_check(const TypedDigraph& g) {
  const BoolMatrix& m = g.adj();
  BoolVector off = bool_product(m | m.transpose(), ~g.present());
  return {off.any(), off};
}

void check_morphism(const TypedDigraph& a, const TypedDigraph& b, const Morphism& f) {
  std::set<std::string> images;
  for (const auto& [x, y] : f.nodes) {
    int i = a.index_of(x), j = b.index_of(y);
    if (i < 0) throw MorphismError("morphism source '" + x + "' is not a node");
    if (j < 0) throw MorphismError("morphism target '" + y + "' is not a node");
    if (a.node(i).type != b.node(j).type)
      throw MorphismError("morphism " + x + "->" + y + " does not preserve the type (" +
                          a.node(i).type + " vs " + b.node(j).type + ")");
    if (!images.insert(y).second)
      throw MorphismError("morphism is not injective at '" + y + "'");
  }
}

namespace {

bool by_type_id(const Node& x, const Node& y) {
  return std::tie(x.type, x.id) < std::tie(y.type, y.id);
}

}  // namespace

std::pair<TypedDigraph, TypedDigraph> complete(const TypedDigraph& g1, const TypedDigraph& g2,
                                               const Morphism& f) {
  check_morphism(g1, g2, f);

  struct Slot {
    int i1 = -1, i2 = -1;
  };
  std::vector<Node> ident, rest1, rest2;
  for (const auto& [x, y] : f.nodes) ident.push_back(g1.node(g1.index_of(x)));
  std::set<std::string> images;
  for (const auto& [x, y] : f.nodes) images.insert(y);
  for (const auto& n : g1.nodes())
    if (!f.defined(n.id)) rest1.push_back(n);
  for (const auto& n : g2.nodes())
    if (!images.count(n.id)) rest2.push_back(n);
  std::sort(ident.begin(), ident.end(), by_type_id);
  std::sort(rest1.begin(), rest1.end(), by_type_id);
  std::sort(rest2.begin(), rest2.end(), by_type_id);

  std::vector<Slot> slots;
  for (const auto& n : ident) slots.push_back({g1.index_of(n.id), g2.index_of(*f(n.id))});
  for (const auto& n : rest1) slots.push_back({g1.index_of(n.id), -1});
  for (const auto& n : rest2) slots.push_back({-1, g2.index_of(n.id)});

  auto build = [&](const TypedDigraph& g, int side) {
    std::size_t n = slots.size();
    std::vector<Node> ns;
    BoolMatrix adj(n, n);
    BoolVector pv(n);
    for (std::size_t s = 0; s < n; ++s) {
      int mine = side == 1 ? slots[s].i1 : slots[s].i2;
      if (mine >= 0) {
        ns.push_back(g.node(mine));
        pv.set(s, g.is_present(mine));
      } else {
        const TypedDigraph& other = side == 1 ? g2 : g1;
        const Node& src = other.node(side == 1 ? slots[s].i2 : slots[s].i1);
        ns.push_back({padded_prefix(side == 1 ? 2 : 1) + src.id, src.type});
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      int ia = side == 1 ? slots[a].i1 : slots[a].i2;
      if (ia < 0) continue;
      for (std::size_t b = 0; b < n; ++b) {
        int ib = side == 1 ? slots[b].i1 : slots[b].i2;
        if (ib >= 0 && g.edge(ia, ib)) adj.set(a, b);
      }
    }
    return TypedDigraph(std::move(ns), std::move(adj), std::move(pv));
  };
  return {build(g1, 1), build(g2, 2)};
}

NegStructure negate(const TypedDigraph& g) {
  return {g.nodes(), ~g.adj(), ~g.present(), std::make_shared<const TypedDigraph>(g)};
}

NegStructure complement_wrt(const TypedDigraph& g, const TypedDigraph& a, const Morphism& f) {
  check_morphism(a, g, f);
  auto [gc, ac] = complete(g, a, f.inverse());
  (void)ac;
  return negate(gc);
}

}  // namespace mgg
