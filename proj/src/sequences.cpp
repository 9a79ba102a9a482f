#include "mgg/sequences.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "mgg/errors.hpp"
#include "mgg/transforms.hpp"

namespace mgg {

namespace {

using K = Formula::Kind;

TypedDigraph restrict_to(const TypedDigraph& a, const std::set<std::string>& types) {
  std::vector<std::string> keep;
  for (const auto& n : a.present_nodes())
    if (types.count(n.type)) keep.push_back(n.id);
  return a.induced(keep);
}

std::set<std::string> census_types(const std::map<std::string, std::size_t>& census) {
  std::set<std::string> t;
  for (const auto& [k, v] : census)
    if (v > 0) t.insert(k);
  return t;
}

Morphism identity_on(const TypedDigraph& a) {
  Morphism f;
  for (const auto& n : a.present_nodes()) f.nodes[n.id] = n.id;
  return f;
}

TypedDigraph without_edges(TypedDigraph a) {
  for (const auto& [x, y] : a.edge_ids()) a.remove_edge(x, y);
  return a;
}

// del;add pair over the nodes of a, checking the absence of the given edges
void push_conj(RuleSequence& s, const TypedDigraph& nodes, const std::vector<EdgeIds>& edges,
               const std::string& label) {
  TypedDigraph bare = without_edges(nodes);
  TypedDigraph full = bare;
  for (const auto& [x, y] : edges) full.add_edge(x, y);
  Morphism id = identity_on(bare);
  std::size_t del = s.add(from_static("del_" + label, full, bare, id), Role::ConjDel);
  std::size_t add = s.add(from_static("add_" + label, bare, full, id), Role::ConjAdd);
  for (const auto& n : bare.present_nodes()) s.same({del, n.id}, {add, n.id});
}

}  // namespace

RuleSequence conj_id_rule(const TypedDigraph& a, const std::map<std::string, std::size_t>& census,
                          const std::string& name) {
  if (a.edge_count() == 0) throw OperatorError("conjugate identity needs a graph with edges");
  TypedDigraph r = restrict_to(a, census_types(census));
  RuleSequence s;
  push_conj(s, r, r.edge_ids(), name);
  s.tags.push_back("idbar_" + name);
  return s;
}

RuleSequence compile_match(const Production& p, const TypedDigraph& a, const Morphism& d) {
  check_morphism(p.lhs(), a, d);
  RuleSequence s;
  s.add(p, Role::Plain);
  std::size_t id = s.add(id_rule(a, "id_A"), Role::Identity);
  for (const auto& [x, y] : d.nodes) s.same({0, x}, {id, y});
  s.tags.push_back("id_A");
  return s;
}

SequenceSet compile_decomp(const Production& p, const TypedDigraph& a, const Morphism& d,
                           const TypedDigraph& g) {
  check_morphism(p.lhs(), a, d);
  if (!connected_with_edge(a)) throw ShapeError("decomposition needs a connected graph with edges");
  TypedDigraph r = restrict_to(a, g.types());
  SequenceSet out;
  auto edges = a.edge_ids();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& [x, y] = edges[i];
    std::string label = "A." + std::to_string(i + 1);
    RuleSequence s;
    s.add(p, Role::Plain);
    std::size_t first = s.size();
    if (r.has_node(x) && r.has_node(y)) {
      push_conj(s, r, {edges[i]}, label);
    } else if (r.node_count() > 0) {
      s.add(id_rule(without_edges(r), "dom_" + label), Role::Domain);
    }
    if (s.size() > first)
      for (const auto& [lx, ay] : d.nodes)
        if (r.has_node(ay)) s.same({0, lx}, {first, ay});
    s.tags.push_back("idbar_" + label);
    out.alternatives.push_back(std::move(s));
  }
  return out;
}

namespace {

AppCondition basic_ac(const Production& p, const TypedDigraph& a, const Morphism& d, Quant q) {
  Diagram dg;
  dg.graphs["A"] = a;
  if (!d.empty()) dg.arrows.push_back({"L", "A", d});
  return make_ac(p, std::move(dg), f_quant(q, "A", f_P("A")));
}

}  // namespace

SequenceSet compile_closure(const Production& p, const TypedDigraph& a, const Morphism& d,
                            const TypedDigraph& g) {
  return compile_ac(basic_ac(p, a, d, Quant::Forall), g);
}

SequenceSet compile_nac(const Production& p, const TypedDigraph& a, const Morphism& d,
                        const TypedDigraph& g) {
  return compile_ac(basic_ac(p, a, d, Quant::NExists), g);
}

// ---- compiling reduced conditions ----

namespace {

// Renames every binder that reuses a name, copying its graph and arrows.
class Uniquifier {
 public:
  explicit Uniquifier(Diagram& d) : d_(d) {}

  Formula run(const Formula& f) {
    if (f.kind != K::Quant) {
      Formula g = f;
      for (auto& k : g.kids) k = run(k);
      return g;
    }
    Formula g = f;
    if (!seen_.insert(g.var).second) {
      std::string n = g.var + "'";
      while (d_.has(n) || seen_.count(n)) n += "'";
      seen_.insert(n);
      d_.graphs[n] = d_.graph(g.var);
      std::vector<Arrow> extra;
      for (const auto& ar : d_.arrows) {
        if (ar.from != g.var && ar.to != g.var) continue;
        Arrow c = ar;
        if (c.from == g.var) c.from = n;
        if (c.to == g.var) c.to = n;
        extra.push_back(std::move(c));
      }
      for (auto& ar : extra) d_.arrows.push_back(std::move(ar));
      g.kids[0] = rename(g.kids[0], g.var, n);
      g.var = n;
    }
    g.kids[0] = run(g.kids[0]);
    return g;
  }

 private:
  static Formula rename(const Formula& f, const std::string& from, const std::string& to) {
    Formula g = f;
    if (g.var == from) g.var = to;
    if (g.var2 == from) g.var2 = to;
    for (auto& k : g.kids) k = rename(k, from, to);
    return g;
  }

  Diagram& d_;
  std::set<std::string> seen_;
};

struct Lit {
  enum class Kind { Pos, Neg, Eq, Neq } kind;
  std::string x, a;  // var, node
  std::string y, b;  // Eq/Neq only
};

struct Disjunct {
  std::vector<std::string> vars;
  std::vector<Lit> lits;
  std::vector<std::pair<std::string, std::string>> glue;  // PU pairs
};

struct VarInfo {
  std::optional<Morphism> anchor;
  std::vector<std::string> ancestors;
};

class DnfBuilder {
 public:
  DnfBuilder(const Diagram& d, const TypedDigraph& g, std::size_t budget)
      : d_(d), types_(g.types()), budget_(budget) {}

  std::map<std::string, VarInfo> info;

  bool in_r(const std::string& var, const std::string& node) const {
    const TypedDigraph& a = d_.graph(var);
    int i = a.index_of(node);
    return i >= 0 && a.is_present(i) && types_.count(a.node(i).type);
  }

  std::vector<Disjunct> run(const Formula& f, const std::vector<std::string>& anc) {
    switch (f.kind) {
      case K::True: return {Disjunct{}};
      case K::False: return {};
      case K::P: {
        if (f.target == Target::Host)
          for (const auto& n : d_.graph(f.var).present_nodes())
            if (!types_.count(n.type)) return {};
        Disjunct dj;
        dj.lits.push_back({f.target == Target::Host ? Lit::Kind::Pos : Lit::Kind::Neg, f.var, {},
                           {}, {}});
        return {dj};
      }
      case K::PU: {
        auto cs = pu_constraints(f);
        if (!cs) return {};
        Disjunct dj;
        dj.lits = std::move(*cs);
        dj.glue.emplace_back(f.var, f.var2);
        return {dj};
      }
      case K::Not: {
        const Formula& a = f.kids[0];
        if (a.kind != K::PU) throw OperatorError("formula is not reduced: negated " + to_string(a));
        auto cs = pu_constraints(a);
        if (!cs) return {Disjunct{}};
        std::vector<Disjunct> out;
        for (auto l : *cs) {
          l.kind = l.kind == Lit::Kind::Eq ? Lit::Kind::Neq : Lit::Kind::Eq;
          Disjunct dj;
          dj.lits.push_back(std::move(l));
          out.push_back(std::move(dj));
        }
        return out;
      }
      case K::And: {
        std::vector<Disjunct> acc{Disjunct{}};
        for (const auto& k : f.kids) {
          auto part = run(k, anc);
          std::vector<Disjunct> next;
          if (acc.size() * part.size() > budget_) over();
          for (const auto& x : acc)
            for (const auto& y : part) {
              Disjunct z = x;
              z.vars.insert(z.vars.end(), y.vars.begin(), y.vars.end());
              z.lits.insert(z.lits.end(), y.lits.begin(), y.lits.end());
              z.glue.insert(z.glue.end(), y.glue.begin(), y.glue.end());
              next.push_back(std::move(z));
            }
          acc = std::move(next);
          if (acc.empty()) break;
        }
        return acc;
      }
      case K::Or: {
        std::vector<Disjunct> out;
        for (const auto& k : f.kids) {
          auto part = run(k, anc);
          for (auto& x : part) out.push_back(std::move(x));
          if (out.size() > budget_) over();
        }
        return out;
      }
      case K::Quant: {
        if (f.quant != Quant::Exists)
          throw OperatorError("formula is not reduced: " + std::string(quant_name(f.quant)) + " " +
                              f.var);
        info[f.var] = {f.anchor, anc};
        auto inner = anc;
        inner.push_back(f.var);
        auto body = run(f.kids[0], inner);
        auto cons = consistency(f.var, anc);
        for (auto& dj : body) {
          dj.vars.insert(dj.vars.begin(), f.var);
          dj.lits.insert(dj.lits.end(), cons.begin(), cons.end());
        }
        return body;
      }
      default: throw OperatorError("formula is not reduced: " + to_string(f));
    }
  }

 private:
  [[noreturn]] void over() const {
    throw BudgetError("more than " + std::to_string(budget_) + " sequences");
  }

  // Eq for every arrow pair between var and an enclosing var.
  std::vector<Lit> consistency(const std::string& var, const std::vector<std::string>& anc) const {
    std::vector<Lit> out;
    for (const auto& ar : d_.arrows) {
      bool out_arrow = ar.from == var && std::count(anc.begin(), anc.end(), ar.to);
      bool in_arrow = ar.to == var && std::count(anc.begin(), anc.end(), ar.from);
      if (!out_arrow && !in_arrow) continue;
      for (const auto& [x, y] : ar.map.nodes)
        if (in_r(ar.from, x) && in_r(ar.to, y)) out.push_back({Lit::Kind::Eq, ar.from, x, ar.to, y});
    }
    return out;
  }

  // PU as a conjunction of Eq/Neq; nullopt when it can never hold.
  std::optional<std::vector<Lit>> pu_constraints(const Formula& atom) const {
    const TypedDigraph& a = d_.graph(atom.var);
    const TypedDigraph& b = d_.graph(atom.var2);
    Relation rel = pu_relation(d_, atom);
    std::set<std::pair<std::string, std::string>> r(rel.begin(), rel.end());
    std::vector<Lit> out;
    for (const auto& x : a.present_nodes())
      for (const auto& y : b.present_nodes()) {
        bool rx = types_.count(x.type), ry = types_.count(y.type);
        if (r.count({x.id, y.id})) {
          if (rx != ry) return std::nullopt;
          if (!rx) continue;
          if (x.type != y.type) return std::nullopt;
          out.push_back({Lit::Kind::Eq, atom.var, x.id, atom.var2, y.id});
        } else if (rx && ry && x.type == y.type) {
          out.push_back({Lit::Kind::Neq, atom.var, x.id, atom.var2, y.id});
        }
      }
    return out;
  }

  const Diagram& d_;
  std::set<std::string> types_;
  std::size_t budget_;
};

template <class T>
struct UnionFind {
  std::map<T, T> parent;
  T find(const T& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    T r = find(it->second);
    parent[x] = r;
    return r;
  }
  void unite(const T& a, const T& b) {
    T ra = find(a), rb = find(b);
    if (ra != rb) parent[rb] = ra;
  }
};

// A piece "X.3" created by decomposition reports as its parent X.
std::string label_of(const Diagram& d, const std::string& var) {
  auto dot = var.rfind('.');
  if (dot == std::string::npos || dot == 0) return var;
  std::string tail = var.substr(dot + 1);
  while (!tail.empty() && tail.back() == '\'') tail.pop_back();
  if (tail.empty() || !std::all_of(tail.begin(), tail.end(), ::isdigit)) return var;
  std::string parent = var.substr(0, dot);
  for (const auto& ar : d.arrows)
    if (ar.from == var && ar.to == parent) return parent;
  return var;
}

using Elem = std::pair<std::string, std::string>;  // (var, node)

class SequenceBuilder {
 public:
  SequenceBuilder(const Diagram& d, const TypedDigraph& g, const DnfBuilder& dnf,
                  const Production* p, const AppCondition* ac)
      : d_(d), types_(g.types()), dnf_(dnf), p_(p), ac_(ac) {}

  std::optional<RuleSequence> build(const Disjunct& dj) {
    // variables in order, without duplicates, dropping those with no host-typed node
    std::vector<std::string> vars;
    std::map<std::string, TypedDigraph> rpart;
    for (const auto& v : dj.vars) {
      if (rpart.count(v)) continue;
      TypedDigraph r = restrict_to(d_.graph(v), types_);
      if (r.node_count() == 0 && !is_rule_var(v)) {
        rpart[v] = r;
        continue;
      }
      rpart[v] = r;
      vars.push_back(v);
    }
    auto active = [&](const std::string& v) {
      return std::find(vars.begin(), vars.end(), v) != vars.end();
    };

    // elements and their classes
    UnionFind<Elem> uf;
    std::vector<Elem> elems;
    for (const auto& v : vars)
      for (const auto& n : rpart[v].present_nodes()) {
        elems.emplace_back(v, n.id);
        uf.find({v, n.id});
      }
    std::map<std::string, Elem> by_host;
    for (const auto& v : vars) {
      const auto& anchor = dnf_.info.at(v).anchor;
      if (!anchor) continue;
      for (const auto& n : rpart[v].present_nodes()) {
        auto h = (*anchor)(n.id);
        if (!h) continue;
        auto [it, fresh] = by_host.emplace(*h, Elem{v, n.id});
        if (!fresh) uf.unite(it->second, {v, n.id});
      }
    }
    std::vector<Lit> neqs;
    for (const auto& l : dj.lits) {
      if (l.kind == Lit::Kind::Eq) {
        if (!active(l.x) || !active(l.y)) continue;
        uf.unite({l.x, l.a}, {l.y, l.b});
      } else if (l.kind == Lit::Kind::Neq) {
        if (active(l.x) && active(l.y)) neqs.push_back(l);
      }
    }
    std::map<Elem, std::vector<Elem>> classes;
    for (const auto& e : elems) classes[uf.find(e)].push_back(e);
    std::map<Elem, std::string> anchor_of;
    for (const auto& [root, members] : classes) {
      std::set<std::string> seen_vars, hosts, tys;
      for (const auto& [v, n] : members) {
        if (!seen_vars.insert(v).second) return std::nullopt;  // two nodes of one graph merged
        tys.insert(d_.graph(v).type_of(n));
        if (const auto& a = dnf_.info.at(v).anchor)
          if (auto h = (*a)(n)) hosts.insert(*h);
      }
      if (hosts.size() > 1 || tys.size() > 1) return std::nullopt;
      if (!hosts.empty()) anchor_of[root] = *hosts.begin();
    }
    std::set<std::pair<Elem, Elem>> neq_pairs;
    for (const auto& l : neqs) {
      Elem a = uf.find({l.x, l.a}), b = uf.find({l.y, l.b});
      if (a == b) return std::nullopt;
      neq_pairs.insert({std::min(a, b), std::max(a, b)});
    }

    // classes per variable
    std::map<std::string, std::set<Elem>> var_classes;
    for (const auto& v : vars) {
      var_classes[v];
      for (const auto& n : rpart[v].present_nodes()) var_classes[v].insert(uf.find({v, n.id}));
    }

    // groups of variables realized by the same rules
    UnionFind<std::string> groups;
    for (const auto& v : vars) groups.find(v);
    if (p_ && active(ac_->n_var)) groups.unite(ac_->l_var, ac_->n_var);
    auto is_rule_group = [&](const std::string& v) {
      return p_ && groups.find(v) == groups.find(ac_->l_var);
    };
    for (const auto& x : vars) {
      if (is_rule_var(x)) continue;
      // prefer the rule's own graph as container
      std::vector<std::string> order;
      if (p_) order.push_back(ac_->l_var);
      for (const auto& y : vars)
        if (!p_ || y != ac_->l_var) order.push_back(y);
      for (const auto& y : order) {
        if (y == x) continue;
        const auto& cx = var_classes[x];
        const auto& cy = var_classes[y];
        if (std::includes(cy.begin(), cy.end(), cx.begin(), cx.end())) {
          groups.unite(y, x);
          break;
        }
      }
    }
    auto group_classes = [&](const std::string& root) {
      std::set<Elem> out;
      for (const auto& v : vars)
        if (groups.find(v) == root) out.insert(var_classes[v].begin(), var_classes[v].end());
      return out;
    };
    auto distinct = [&](const Elem& a, const Elem& b) {
      if (neq_pairs.count({std::min(a, b), std::max(a, b)})) return true;
      auto ha = anchor_of.find(a), hb = anchor_of.find(b);
      if (ha != anchor_of.end() && hb != anchor_of.end() && ha->second != hb->second) return true;
      if (type_of(a) != type_of(b)) return true;
      for (const auto& v : vars)
        if (var_classes[v].count(a) && var_classes[v].count(b)) return true;
      return false;
    };
    for (const auto& [x, y] : dj.glue) {
      if (!active(x) || !active(y)) continue;
      std::string rx = groups.find(x), ry = groups.find(y);
      if (rx == ry || is_rule_group(x) || is_rule_group(y)) continue;
      auto cx = group_classes(rx), cy = group_classes(ry);
      std::set<Elem> all = cx;
      all.insert(cy.begin(), cy.end());
      bool safe = true;
      std::vector<Elem> v(all.begin(), all.end());
      for (std::size_t i = 0; i < v.size() && safe; ++i)
        for (std::size_t j = i + 1; j < v.size() && safe; ++j)
          if (!distinct(v[i], v[j])) safe = false;
      if (safe) groups.unite(rx, ry);
    }

    // literal edges per group, as class pairs
    std::map<std::string, std::set<std::pair<Elem, Elem>>> pos, neg;
    std::map<std::string, std::vector<std::string>> pos_names, neg_names;
    auto joined = [](const std::vector<std::string>& xs) {
      std::string out;
      for (const auto& x : xs) out += (out.empty() ? "" : "+") + x;
      return out;
    };
    for (const auto& l : dj.lits) {
      if (l.kind != Lit::Kind::Pos && l.kind != Lit::Kind::Neg) continue;
      bool positive = l.kind == Lit::Kind::Pos;
      if (!active(l.x)) continue;  // no host-typed node: already decided
      if (p_ && positive && l.x == ac_->l_var) continue;    // the match gives L
      if (p_ && !positive && l.x == ac_->n_var) continue;   // the match checks N
      std::string root = groups.find(l.x);
      for (const auto& [a, b] : rpart[l.x].edge_ids()) {
        auto e = std::make_pair(uf.find({l.x, a}), uf.find({l.x, b}));
        (positive ? pos : neg)[root].insert(e);
      }
      auto& names = (positive ? pos_names : neg_names)[root];
      if (std::find(names.begin(), names.end(), l.x) == names.end()) names.push_back(l.x);
      tags_.push_back((positive ? "id_" : "idbar_") + label_of(d_, l.x));
    }

    // emit rules
    RuleSequence s;
    std::map<Elem, std::vector<SlotRef>> reps;
    std::vector<std::string> roots;
    for (const auto& v : vars)
      if (std::find(roots.begin(), roots.end(), groups.find(v)) == roots.end())
        roots.push_back(groups.find(v));
    if (p_) {
      s.add(*p_, Role::Plain);
      for (const auto& n : p_->lhs().present_nodes())
        reps[uf.find({ac_->l_var, n.id})].push_back({0, n.id});
    }
    for (const auto& root : roots) {
      auto cls = ordered_classes(root, vars, groups, rpart, uf);
      std::map<Elem, std::string> slot;
      std::set<std::string> used;
      TypedDigraph nodes;
      for (const auto& [c, id0] : cls) {
        std::string id = id0;
        while (used.count(id)) id += "'";
        used.insert(id);
        slot[c] = id;
        nodes.add_node(id, type_of(c));
      }
      std::string label = label_of(d_, first_var(root, vars, groups));
      auto as_ids = [&](const std::set<std::pair<Elem, Elem>>& es) {
        std::vector<EdgeIds> out;
        for (const auto& [a, b] : es) out.emplace_back(slot[a], slot[b]);
        return out;
      };
      std::vector<std::size_t> made;
      bool rule_grp = p_ && root == groups.find(ac_->l_var);
      if (!pos[root].empty()) {
        TypedDigraph a = nodes;
        for (const auto& [x, y] : as_ids(pos[root])) a.add_edge(x, y);
        made.push_back(s.add(id_rule(a, "id_" + joined(pos_names[root])), Role::Identity));
      }
      if (!neg[root].empty()) {
        std::size_t before = s.size();
        push_conj(s, nodes, as_ids(neg[root]), joined(neg_names[root]));
        made.push_back(before);
        made.push_back(before + 1);
      }
      if (made.empty() && !rule_grp)
        made.push_back(s.add(id_rule(nodes, "dom_" + label), Role::Domain));
      for (std::size_t r : made)
        for (const auto& [c, id] : slot) reps[c].push_back({r, id});
    }
    // the conjugate pairs already link their own nodes; link the rest
    for (auto& [c, rs] : reps) {
      for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
        bool paired = s.roles[rs[i].rule] == Role::ConjDel && rs[i + 1].rule == rs[i].rule + 1;
        if (!paired) s.same(rs[i], rs[i + 1]);
      }
      if (auto it = anchor_of.find(c); it != anchor_of.end())
        for (const auto& r : rs) s.anchor(r, it->second);
    }
    for (const auto& [a, b] : neq_pairs) {
      if (reps[a].empty() || reps[b].empty()) continue;
      bool shared = false;
      for (const auto& ra : reps[a])
        for (const auto& rb : reps[b])
          if (ra.rule == rb.rule) shared = true;
      if (!shared) s.differ(reps[a].front(), reps[b].front());
    }
    std::sort(tags_.begin(), tags_.end());
    tags_.erase(std::unique(tags_.begin(), tags_.end()), tags_.end());
    s.tags = std::move(tags_);
    tags_.clear();
    s.validate();
    return s;
  }

 private:
  bool is_rule_var(const std::string& v) const {
    return p_ && (v == ac_->l_var || v == ac_->n_var);
  }

  std::string type_of(const Elem& e) const { return d_.graph(e.first).type_of(e.second); }

  std::string first_var(const std::string& root, const std::vector<std::string>& vars,
                        UnionFind<std::string>& groups) const {
    for (const auto& v : vars)
      if (groups.find(v) == root) return v;
    return root;
  }

  // classes of a group with a preferred slot id, in first-seen order
  std::vector<std::pair<Elem, std::string>> ordered_classes(
      const std::string& root, const std::vector<std::string>& vars, UnionFind<std::string>& groups,
      std::map<std::string, TypedDigraph>& rpart, UnionFind<Elem>& uf) const {
    std::vector<std::pair<Elem, std::string>> out;
    std::set<Elem> seen;
    std::vector<std::string> order;
    if (p_ && groups.find(ac_->l_var) == root) order.push_back(ac_->l_var);
    for (const auto& v : vars)
      if (groups.find(v) == root && (!p_ || v != ac_->l_var)) order.push_back(v);
    for (const auto& v : order)
      for (const auto& n : rpart[v].present_nodes()) {
        Elem c = uf.find({v, n.id});
        if (seen.insert(c).second) out.emplace_back(c, n.id);
      }
    return out;
  }

  const Diagram& d_;
  std::set<std::string> types_;
  const DnfBuilder& dnf_;
  const Production* p_;
  const AppCondition* ac_;
  std::vector<std::string> tags_;
};

void compile_reduced(const GraphConstraint& reduced, const TypedDigraph& g, const Production* p,
                     const AppCondition* ac, std::size_t budget, SequenceSet& out) {
  Diagram d = reduced.diagram;
  Formula f = Uniquifier(d).run(reduced.formula);
  DnfBuilder dnf(d, g, budget);
  auto disjuncts = dnf.run(f, {});
  SequenceBuilder sb(d, g, dnf, p, ac);
  for (const auto& dj : disjuncts)
    if (auto s = sb.build(dj)) out.alternatives.push_back(std::move(*s));
}

}  // namespace

SequenceSet compile_ac(const AppCondition& ac, const TypedDigraph& g, std::size_t budget) {
  SequenceSet out;
  for (const auto& m : find_matches(ac.rule, g)) {
    GraphConstraint gc;
    gc.diagram = ac.gc.diagram;
    Morphism n_anchor;
    for (const auto& n : gc.diagram.graph(ac.n_var).present_nodes())
      n_anchor.nodes[n.id] = *m.mL(n.id);
    gc.formula = f_quant(
        Quant::Exists, ac.l_var,
        f_quant(Quant::Exists, ac.n_var, f_and({f_P(ac.n_var, Target::NegHost), ac.gc.formula}),
                n_anchor),
        m.mL);
    auto trace = reduce(gc, g);
    std::size_t before = out.size();
    compile_reduced(trace.result, g, &ac.rule, &ac, budget, out);
    if (out.size() - before > budget)
      throw BudgetError("more than " + std::to_string(budget) + " sequences");
  }
  return out;
}

SequenceSet compile_gc(const GraphConstraint& gc, const TypedDigraph& g, std::size_t budget) {
  SequenceSet out;
  auto trace = reduce(gc, g);
  compile_reduced(trace.result, g, nullptr, nullptr, budget, out);
  return out;
}

// ---- applicability ----

namespace {

class Runner {
 public:
  Runner(const RuleSequence& s, bool strict) : s_(s), strict_(strict), where_(s.size()) {}

  bool run(const TypedDigraph& g) { return step(s_.size(), g); }

  std::vector<AppliedStep> trace;
  TypedDigraph result;

 private:
  bool pin(Morphism& fixed, const std::string& slot, const std::string& host) const {
    auto [it, fresh] = fixed.nodes.emplace(slot, host);
    return fresh || it->second == host;
  }

  // link endpoint in rule r and its partner in an already applied rule
  const SlotRef* partner(const Link& l, std::size_t r, const SlotRef** mine) const {
    if (l.kind == Link::Kind::Anchor) return nullptr;
    const SlotRef* m = l.a.rule == r ? &l.a : l.b.rule == r ? &l.b : nullptr;
    if (!m) return nullptr;
    const SlotRef* o = m == &l.a ? &l.b : &l.a;
    if (o->rule <= r) return nullptr;
    *mine = m;
    return o;
  }

  std::optional<std::string> applied_host(const SlotRef& o) const {
    auto it = where_[o.rule].find(o.slot);
    if (it == where_[o.rule].end()) return std::nullopt;
    return it->second;
  }

  bool step(std::size_t left, const TypedDigraph& cur) {
    if (left == 0) {
      result = cur;
      return true;
    }
    std::size_t r = left - 1;
    const Production& p = s_.rules[r];
    Morphism fixed;
    for (const auto& l : s_.links) {
      if (l.kind == Link::Kind::Anchor) {
        if (l.a.rule != r || !p.L.has_node(l.a.slot)) continue;
        if (!p.in_lhs(p.L.index_of(l.a.slot))) continue;
        if (!pin(fixed, l.a.slot, l.host)) return false;
        continue;
      }
      const SlotRef* mine = nullptr;
      const SlotRef* other = partner(l, r, &mine);
      if (!other || l.kind != Link::Kind::Same) continue;
      if (!p.in_lhs(p.L.index_of(mine->slot))) continue;
      auto h = applied_host(*other);
      if (h && !pin(fixed, mine->slot, *h)) return false;
    }
    for (const auto& m : find_matches(p, cur, fixed)) {
      bool ok = true;
      for (const auto& l : s_.links) {
        const SlotRef* mine = nullptr;
        const SlotRef* other = partner(l, r, &mine);
        if (!other || l.kind != Link::Kind::Differ) continue;
        auto mh = m.mL(mine->slot);
        auto h = applied_host(*other);
        if (mh && h && *mh == *h) ok = false;
      }
      if (!ok) continue;
      DerivationResult res;
      if (strict_) {
        try {
          res = direct_derive(p, m, cur);
        } catch (const DanglingError&) {
          continue;
        }
      } else {
        res = derive_with_epsilon(p, m, cur);
      }
      std::map<std::string, std::string> full = m.mL.nodes;
      for (const auto& [k, v] : res.comatch.nodes) full.emplace(k, v);
      for (const auto& l : s_.links) {
        const SlotRef* mine = nullptr;
        const SlotRef* other = partner(l, r, &mine);
        if (!other || m.mL.defined(mine->slot)) continue;
        auto h = applied_host(*other);
        auto it = full.find(mine->slot);
        if (!h || it == full.end()) continue;
        if ((l.kind == Link::Kind::Same) != (it->second == *h)) ok = false;
      }
      if (!ok) continue;
      where_[r] = std::move(full);
      trace.push_back({r, m});
      if (step(r, res.H)) return true;
      trace.pop_back();
    }
    where_[r].clear();
    return false;
  }

  const RuleSequence& s_;
  bool strict_;
  std::vector<std::map<std::string, std::string>> where_;
};

}  // namespace

ApplyResult applicable(const RuleSequence& s, const TypedDigraph& g, bool strict) {
  s.validate();
  Runner run(s, strict);
  ApplyResult out;
  out.ok = run.run(g);
  if (out.ok) {
    out.trace = std::move(run.trace);
    out.result = std::move(run.result);
  }
  return out;
}

ApplyResult applicable(const SequenceSet& s, const TypedDigraph& g, bool strict) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    ApplyResult r = applicable(s.alternatives[i], g, strict);
    if (r.ok) {
      r.alternative = i;
      return r;
    }
  }
  return {};
}

// ---- analysis ----

const char* conflict_name(Conflict::Kind k) {
  switch (k) {
    case Conflict::Kind::Coherence: return "coherence";
    case Conflict::Kind::Dangling: return "dangling";
    case Conflict::Kind::Identity: return "identity";
  }
  return "?";
}

namespace {

enum class St { Unknown, Present, Absent };

class Analyzer {
 public:
  explicit Analyzer(const RuleSequence& s) : s_(s) {}

  SequenceReport run() {
    s_.validate();
    classes();
    SequenceReport rep;
    for (const auto& l : s_.links)
      if (l.kind == Link::Kind::Differ && cls(l.a) == cls(l.b))
        add_conflict(rep, Conflict::Kind::Identity, l.a.rule, cls(l.a), -1);
    for (std::size_t r = s_.size(); r-- > 0;) walk(r, rep);
    rep.coherent = rep.compatible = true;
    for (const auto& c : rep.conflicts) {
      if (c.kind == Conflict::Kind::Dangling)
        rep.compatible = false;
      else
        rep.coherent = false;
    }
    rep.mid = graph_of(mid_nodes_, mid_edges_);
    std::vector<int> nid_nodes;
    for (const auto& [a, b] : nid_edges_) {
      for (int x : {a, b})
        if (std::find(nid_nodes.begin(), nid_nodes.end(), x) == nid_nodes.end())
          nid_nodes.push_back(x);
    }
    rep.nid = graph_of(nid_nodes, nid_edges_);
    auto all_nodes = mid_nodes_;
    all_nodes.insert(all_nodes.end(), ctx_nodes_.begin(), ctx_nodes_.end());
    auto all_edges = mid_edges_;
    all_edges.insert(all_edges.end(), ctx_edges_.begin(), ctx_edges_.end());
    rep.context = graph_of(all_nodes, all_edges);
    return rep;
  }

 private:
  int cls(const SlotRef& r) const { return find(index_.at({r.rule, r.slot})); }
  int cls(std::size_t rule, std::size_t slot) const {
    return cls(SlotRef{rule, s_.rules[rule].slots()[slot].id});
  }
  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  void classes() {
    for (std::size_t r = 0; r < s_.size(); ++r)
      for (const auto& n : s_.rules[r].slots()) {
        index_[{r, n.id}] = static_cast<int>(parent_.size());
        parent_.push_back(static_cast<int>(parent_.size()));
        type_.push_back(n.type);
        fallback_.push_back(n.id);
      }
    std::map<std::string, int> host;
    for (const auto& l : s_.links) {
      int a = index_.at({l.a.rule, l.a.slot});
      if (l.kind == Link::Kind::Same) unite(a, index_.at({l.b.rule, l.b.slot}));
      if (l.kind == Link::Kind::Anchor) {
        auto [it, fresh] = host.emplace(l.host, a);
        if (!fresh) unite(a, it->second);
      }
    }
    for (const auto& l : s_.links)
      if (l.kind == Link::Kind::Anchor) anchor_[find(index_.at({l.a.rule, l.a.slot}))] = l.host;
    // names: anchored host, else the slot id in the earliest written rule
    std::set<std::string> taken;
    for (const auto& [c, h] : anchor_) taken.insert(h);
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      int c = find(static_cast<int>(i));
      if (name_.count(c)) continue;
      if (auto it = anchor_.find(c); it != anchor_.end()) {
        name_[c] = it->second;
        continue;
      }
      std::string n = fallback_[i];
      while (taken.count(n)) n += "'";
      taken.insert(n);
      name_[c] = n;
    }
  }

  St& edge(int a, int b) { return edges_[{a, b}]; }

  void add_conflict(SequenceReport& rep, Conflict::Kind k, std::size_t rule, int a, int b) {
    Conflict c;
    c.kind = k;
    c.rule = rule;
    c.is_edge = b >= 0;
    c.src = name_.at(a);
    c.src_type = type_[a];
    if (b >= 0) {
      c.dst = name_.at(b);
      c.dst_type = type_[b];
    }
    rep.conflicts.push_back(std::move(c));
  }

  void need_node(int c, bool counts) {
    if (nodes_[c] != St::Unknown) return;
    (counts ? mid_nodes_ : ctx_nodes_).push_back(c);
  }

  void walk(std::size_t r, SequenceReport& rep) {
    const Production& p = s_.rules[r];
    Role role = s_.roles[r];
    bool counts = role == Role::Plain || role == Role::Identity;
    std::size_t n = p.size();
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = cls(r, i);
    std::set<int> seen;
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.in_lhs(i)) continue;
      if (!seen.insert(c[i]).second) add_conflict(rep, Conflict::Kind::Identity, r, c[i], -1);
      if (nodes_[c[i]] == St::Absent) add_conflict(rep, Conflict::Kind::Coherence, r, c[i], -1);
      need_node(c[i], counts);
      nodes_[c[i]] = St::Present;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!p.in_lhs(i) || !p.in_lhs(j) || !p.L.edge(i, j)) continue;
        St& st = edge(c[i], c[j]);
        if (st == St::Absent) add_conflict(rep, Conflict::Kind::Coherence, r, c[i], c[j]);
        if (st == St::Unknown) (counts ? mid_edges_ : ctx_edges_).emplace_back(c[i], c[j]);
        st = St::Present;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!p.in_lhs(i) || !p.in_lhs(j) || !p.NE.get(i, j)) continue;
        St& st = edge(c[i], c[j]);
        if (st == St::Present) add_conflict(rep, Conflict::Kind::Coherence, r, c[i], c[j]);
        if (st == St::Unknown) nid_edges_.emplace_back(c[i], c[j]);
        st = St::Absent;
      }
    std::set<std::pair<int, int>> l_edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p.in_lhs(i) && p.in_lhs(j) && p.L.edge(i, j)) l_edges.insert({c[i], c[j]});
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.deletes(i)) continue;
      for (auto& [e, st] : edges_) {
        if (e.first != c[i] && e.second != c[i]) continue;
        if (st == St::Present && !l_edges.count(e))
          add_conflict(rep, Conflict::Kind::Dangling, r, e.first, e.second);
        st = St::Absent;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p.eE.get(i, j)) edge(c[i], c[j]) = St::Absent;
    for (std::size_t i = 0; i < n; ++i)
      if (p.deletes(i)) nodes_[c[i]] = St::Absent;
    for (std::size_t i = 0; i < n; ++i)
      if (p.adds(i)) nodes_[c[i]] = St::Present;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p.rE.get(i, j)) edge(c[i], c[j]) = St::Present;
  }

  TypedDigraph graph_of(const std::vector<int>& nodes,
                        const std::vector<std::pair<int, int>>& edges) const {
    std::vector<Node> ns;
    std::vector<EdgeIds> es;
    std::set<int> in;
    for (int x : nodes)
      if (in.insert(x).second) ns.push_back({name_.at(x), type_[x]});
    for (const auto& [a, b] : edges) {
      for (int x : {a, b})
        if (in.insert(x).second) ns.push_back({name_.at(x), type_[x]});
      es.emplace_back(name_.at(a), name_.at(b));
    }
    return build_graph(ns, es);
  }

  const RuleSequence& s_;
  std::map<std::pair<std::size_t, std::string>, int> index_;
  std::vector<int> parent_;
  std::vector<std::string> type_, fallback_;
  std::map<int, std::string> anchor_, name_;
  std::map<int, St> nodes_;
  std::map<std::pair<int, int>, St> edges_;
  std::vector<int> mid_nodes_, ctx_nodes_;
  std::vector<std::pair<int, int>> mid_edges_, ctx_edges_, nid_edges_;
};

AcReport properties(SequenceSet set) {
  AcReport out;
  out.sequences = std::move(set);
  for (const auto& s : out.sequences.alternatives) {
    SequenceReport r = analyze(s);
    out.coherent = out.coherent || r.coherent;
    out.compatible = out.compatible || r.compatible;
    if (r.coherent && r.compatible && applicable(s, r.context, true).ok) out.consistent = true;
    out.reports.push_back(std::move(r));
  }
  return out;
}

}  // namespace

SequenceReport analyze(const RuleSequence& s) { return Analyzer(s).run(); }

AcReport check_ac_properties(const AppCondition& ac, const TypedDigraph& g, std::size_t budget) {
  return properties(compile_ac(ac, g, budget));
}

AcReport check_gc_properties(const GraphConstraint& gc, const TypedDigraph& g,
                             std::size_t budget) {
  return properties(compile_gc(gc, g, budget));
}

}  // namespace mgg
